import itertools

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from bdris import archgraph as ag
from bdris.archgraph import Architecture, ArchitectureError, Partition
from bdris.verify import random_cyclic_graph, random_forest


@st.composite
def graphs(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Architecture(n, tuple(edges))


def to_nx(arch):
    g = nx.Graph()
    g.add_nodes_from(range(1, arch.n + 1))
    g.add_edges_from(arch.edges)
    return g


def test_path_and_edgeless():
    path = ag.new_architecture(3, [(1, 2), (2, 3)])
    assert path.num_edges == 2
    assert ag.new_architecture(4, []).num_edges == 0


def test_edges_canonicalised():
    arch = ag.new_architecture(4, [(3, 1), (1, 3), (2, 4)])
    assert arch.edges == ((1, 3), (2, 4))


@pytest.mark.parametrize("n, edges", [(2, [(1, 1)]), (3, [(0, 1)]), (3, [(2, 4)]), (0, [])])
def test_invalid_architectures(n, edges):
    with pytest.raises(ArchitectureError):
        ag.new_architecture(n, edges)


@pytest.mark.parametrize("n, edges, sizes", [
    (3, [(1, 2), (2, 3)], (3,)),
    (4, [], (1, 1, 1, 1)),
    (4, [(1, 2), (3, 4)], (2, 2)),
    (6, [(5, 6), (4, 5), (1, 2)], (3, 2, 1)),
])
def test_connected_components(n, edges, sizes):
    assert ag.connected_components(ag.new_architecture(n, edges)).sizes == sizes


def test_is_forest():
    assert not ag.is_forest(ag.new_architecture(3, [(1, 2), (2, 3), (1, 3)]))
    assert ag.is_forest(ag.canonical_architecture("tree", 7))
    assert ag.is_forest(ag.new_architecture(5))


@pytest.mark.parametrize("kind, expected", [("single", 64), ("fully", 2080), ("tree", 127)])
def test_complexity_at_64(kind, expected):
    assert ag.circuit_complexity(ag.canonical_architecture(kind, 64)) == expected


def test_group_and_forest_of_twos_coincide():
    group = ag.canonical_architecture("group", 4, 2)
    forest = ag.canonical_architecture("forest", 4, 2)
    assert group.edges == forest.edges == ((1, 2), (3, 4))
    assert ag.circuit_complexity(group) == 6


def test_canonical_tree_small():
    tree = ag.canonical_architecture("tree", 3)
    assert tree.edges == ((1, 2), (2, 3))
    assert ag.circuit_complexity(tree) == 5


def test_canonical_rejects_bad_group_size():
    with pytest.raises(ArchitectureError):
        ag.canonical_architecture("group", 6, 4)
    with pytest.raises(ArchitectureError):
        ag.canonical_architecture("star", 6)


def test_remove_cycle_edge_examples():
    tri = ag.new_architecture(3, [(1, 2), (2, 3), (1, 3)])
    cut = ag.remove_cycle_edge(tri)
    assert ag.is_forest(cut) and cut.num_edges == 2
    assert ag.connected_components(cut).sizes == (3,)

    k4 = ag.canonical_architecture("fully", 4)
    cut = ag.remove_cycle_edge(k4)
    assert cut.num_edges == 5
    assert ag.connected_components(cut).sizes == (4,)

    with pytest.raises(ArchitectureError):
        ag.remove_cycle_edge(ag.canonical_architecture("tree", 3))


@given(graphs())
def test_components_match_networkx(arch):
    expected = sorted((len(c) for c in nx.connected_components(to_nx(arch))), reverse=True)
    comps = ag.connected_components(arch)
    assert list(comps.sizes) == expected
    assert comps.n == arch.n and all(s >= 1 for s in comps.sizes)
    assert ag.is_forest(arch) == nx.is_forest(to_nx(arch))


@given(graphs(min_n=3))
def test_cycle_removal_properties(arch):
    if ag.is_forest(arch):
        return
    cut = ag.remove_cycle_edge(arch)
    assert ag.connected_components(cut) == ag.connected_components(arch)
    assert ag.circuit_complexity(cut) == ag.circuit_complexity(arch) - 1
    assert set(cut.edges) < set(arch.edges)


def test_random_forests_obey_edge_count(rng):
    for _ in range(300):
        arch = random_forest(int(rng.integers(1, 40)), rng)
        assert ag.is_forest(arch)
        assert ag.connected_components(arch).g == arch.n - arch.num_edges


def test_random_cyclic_graphs_have_cycles(rng):
    for _ in range(100):
        assert not ag.is_forest(random_cyclic_graph(int(rng.integers(3, 20)), rng))


@given(st.integers(1, 40))
def test_tree_and_single_complexity(n):
    tree = ag.canonical_architecture("tree", n)
    assert ag.is_forest(tree) and ag.connected_components(tree).g == 1
    assert ag.circuit_complexity(tree) == 2 * n - 1
    assert ag.circuit_complexity(ag.canonical_architecture("single", n)) == n


def test_component_groups_vertices():
    arch = ag.new_architecture(5, [(2, 4), (4, 5)])
    assert ag.component_groups(arch) == [(2, 4, 5), (1,), (3,)]


def test_edge_list_roundtrip(tmp_path):
    arch = ag.canonical_architecture("forest", 8, 4)
    path = tmp_path / "arch.txt"
    arch.save(path)
    assert path.read_text().splitlines()[0] == "n=8"
    assert Architecture.load(path) == arch


@pytest.mark.parametrize("text", ["1 2\n", "n=3\n1 2 3\n", "n=3\n1 x\n", "n=2\n1 1\n"])
def test_edge_list_rejects_malformed(text):
    with pytest.raises(ArchitectureError):
        Architecture.from_text(text)


def test_partition_parse_and_format():
    p = Partition.parse("33+1+1")
    assert p.sizes == (33, 1, 1) and str(p) == "33+1+1"
    assert Partition.parse("1,1,14", n=16).sizes == (1, 1, 14)
    assert Partition.parse("1,1,14").canonical().sizes == (14, 1, 1)
    with pytest.raises(ArchitectureError, match="17.*16"):
        Partition.parse("1,1,15", n=16)
    with pytest.raises(ArchitectureError):
        Partition(())
    with pytest.raises(ArchitectureError):
        Partition((2, 0))
