import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bdris import pareto
from bdris.archgraph import ArchitectureError, Partition
from bdris.power import expected_power_exact, expected_power_group, expected_power_single

# 40-digit mpmath evaluations of the exact expectation
FRONTIER_64_96 = 3288.468184898010447259   # partition (33, 1 x 31)
GROUP_64_32 = 3225.822081391922436486


def rel(a, b):
    return abs(a - b) / abs(b)


def naive_partitions(n, g):
    """Independent oracle: all nonincreasing g-tuples summing to n, by filtering compositions."""
    out = set()

    def rec(prefix, remaining, slots):
        if slots == 0:
            if remaining == 0:
                out.add(tuple(sorted(prefix, reverse=True)))
            return
        for s in range(1, remaining - slots + 2):
            rec(prefix + [s], remaining - s, slots - 1)

    rec([], n, g)
    return out


def test_groups_for_complexity():
    assert pareto.groups_for_complexity(64, 64) == 64
    assert pareto.groups_for_complexity(64, 127) == 1
    for c in (63, 128):
        with pytest.raises(ArchitectureError):
            pareto.groups_for_complexity(64, c)


def test_optimal_partition():
    assert pareto.optimal_partition(8, 3).sizes == (6, 1, 1)
    assert pareto.optimal_partition(9, 1).sizes == (9,)
    assert pareto.optimal_partition(5, 5).sizes == (1,) * 5
    for g in (0, 6):
        with pytest.raises(ArchitectureError):
            pareto.optimal_partition(5, g)


def test_enumerate_examples():
    got = [p.sizes for p in pareto.enumerate_partitions(8, 3)]
    assert got == [(6, 1, 1), (5, 2, 1), (4, 3, 1), (4, 2, 2), (3, 3, 2)]
    assert [p.sizes for p in pareto.enumerate_partitions(4, 2)] == [(3, 1), (2, 2)]
    assert [p.sizes for p in pareto.enumerate_partitions(6, 6)] == [(1,) * 6]


@pytest.mark.parametrize("n", range(1, 13))
def test_enumerate_matches_naive_oracle(n):
    for g in range(1, n + 1):
        got = [p.sizes for p in pareto.enumerate_partitions(n, g)]
        assert len(got) == len(set(got))
        assert set(got) == naive_partitions(n, g)
        assert got == sorted(got, reverse=True)


def test_partition_count_p14():
    assert sum(1 for g in range(1, 15) for _ in pareto.enumerate_partitions(14, g)) == 135


def test_brute_force_inverse_examples():
    res = pareto.brute_force_optimal_partition(8, 3, "inverse_size_sum")
    assert res.partition.sizes == (6, 1, 1)
    assert res.value == pytest.approx(13 / 6)
    assert res.evaluated == 5 and not res.ties
    assert pareto.brute_force_optimal_partition(4, 2, "inverse_size_sum").partition.sizes == (3, 1)


def test_brute_force_guards():
    with pytest.raises(ArchitectureError):
        pareto.brute_force_optimal_partition(31, 3)
    with pytest.raises(ValueError):
        pareto.brute_force_optimal_partition(5, 2, "nope")


def test_brute_force_reports_ties(monkeypatch):
    monkeypatch.setattr(pareto, "_objective", lambda name: (lambda p: 1.0))
    res = pareto.brute_force_optimal_partition(8, 3)
    assert res.partition.sizes == (6, 1, 1)
    assert [t.sizes for t in res.ties] == [(5, 2, 1), (4, 3, 1), (4, 2, 2), (3, 3, 2)]


def test_exact_rational_ties():
    assert pareto._close(Fraction(1, 3) + Fraction(1, 6), Fraction(1, 4) + Fraction(1, 4), 0.0)
    assert not pareto._close(Fraction(1, 3), Fraction(1, 3) + Fraction(1, 10**30), 1e-12)


@pytest.mark.parametrize("n", range(1, 15))
def test_brute_force_matches_closed_form(n):
    for g in range(1, n + 1):
        want = pareto.optimal_partition(n, g)
        for obj in pareto.OBJECTIVES:
            res = pareto.brute_force_optimal_partition(n, g, obj)
            assert res.partition == want and res.ties == (), (n, g, obj)


def test_pareto_point_examples():
    top = pareto.pareto_point(64, 127)
    assert top.value == 4096.0 and top.groups == 1 and top.partition.sizes == (64,)
    bottom = pareto.pareto_point(64, 64)
    assert rel(bottom.value, expected_power_single(64)) < 1e-12
    mid = pareto.pareto_point(64, 96)
    assert mid.partition.sizes == (33,) + (1,) * 31
    assert rel(mid.value, FRONTIER_64_96) < 1e-12
    with pytest.raises(ArchitectureError):
        pareto.pareto_point(64, 200)


def test_closed_form_equals_plugin_everywhere():
    for n in range(1, 129):
        for c in range(n, 2 * n):
            closed = pareto.frontier_closed_form(n, c)
            plugin = expected_power_exact(pareto.optimal_partition(n, 2 * n - c))
            assert rel(closed, plugin) <= 1e-9


def test_mismatch_is_detected(monkeypatch):
    monkeypatch.setattr(pareto, "frontier_closed_form", lambda n, c: 1.0)
    with pytest.raises(pareto.FormulaMismatch):
        pareto.pareto_point(4, 5)


def test_frontier_small_cases():
    (only,) = pareto.pareto_frontier(1)
    assert (only.complexity, only.value) == (1, 1.0)
    a, b = pareto.pareto_frontier(2)
    assert a.complexity == 2 and a.value == pytest.approx(2 + math.pi**2 / 8, rel=1e-14)
    assert b.complexity == 3 and b.value == 4.0


@pytest.mark.parametrize("n", [2, 8, 16, 64, 128])
def test_frontier_strictly_increasing(n):
    pts = pareto.pareto_frontier(n)
    assert len(pts) == n
    assert [p.complexity for p in pts] == list(range(n, 2 * n))
    assert all(b.value > a.value for a, b in zip(pts, pts[1:]))
    assert rel(pts[0].value, expected_power_single(n)) < 1e-12
    assert pts[-1].value == n * n


@pytest.mark.parametrize("n", range(1, 15))
def test_dominance(n):
    for g in range(1, n + 1):
        bound = pareto.pareto_point(n, 2 * n - g).value
        for p in pareto.enumerate_partitions(n, g):
            assert expected_power_exact(p) <= bound + 1e-9


@given(st.integers(1, 60), st.data())
def test_point_invariants(n, data):
    c = data.draw(st.integers(n, 2 * n - 1))
    pt = pareto.pareto_point(n, c)
    assert pt.groups == 2 * n - c and pt.partition.g == pt.groups and pt.partition.n == n
    assert pt.value > 0


def test_architecture_points_n64():
    pts = {p.label: p for p in pareto.architecture_points(64, [2, 4, 8, 16])}
    assert (pts["tree"].complexity, pts["tree"].value) == (127, 4096.0)
    assert (pts["fully"].complexity, pts["fully"].value) == (2080, 4096.0)
    assert pts["single"].complexity == 64
    assert rel(pts["single"].value, expected_power_single(64)) < 1e-14
    assert pts["forest-2"].complexity == 96
    assert rel(pts["forest-2"].value, GROUP_64_32) < 1e-12
    assert pts["forest-2"].value < pareto.pareto_point(64, 96).value
    # size-2 groups: forest and group connected coincide
    assert (pts["group-2"].complexity, pts["group-2"].value) == (96, pts["forest-2"].value)
    for k, g in [(4, 16), (8, 8), (16, 4)]:
        assert pts[f"forest-{k}"].complexity == 128 - g
        assert pts[f"group-{k}"].complexity == 64 * (k + 1) // 2
        assert pts[f"group-{k}"].value == pts[f"forest-{k}"].value == expected_power_group(64, g)
    assert Counter(p.label.split("-")[0] for p in pts.values()) == Counter(
        {"single": 1, "tree": 1, "fully": 1, "forest": 4, "group": 4})


def test_architecture_points_reject_bad_size():
    with pytest.raises(ArchitectureError):
        pareto.architecture_points(64, [3])


def test_frontier_csv_layout():
    text = pareto.frontier_csv(pareto.pareto_frontier(3)).splitlines()
    assert text[0] == "complexity,groups,partition,value_closed_form,value_plugin"
    assert text[1].startswith("3,3,1+1+1,")
    assert text[-1] == "5,1,3,9.0,9.0"
    # full round-trip precision
    row = text[1].split(",")
    assert float(row[3]) == pareto.pareto_point(3, 3).value


def test_architecture_csv_layout():
    text = pareto.architecture_csv(pareto.architecture_points(4, [2])).splitlines()
    assert text[0] == "label,complexity,value"
    assert text[2] == "tree,7,16.0"


def test_parse_partition_used_by_frontier():
    assert str(pareto.optimal_partition(5, 3)) == "3+1+1"
    assert Partition.parse("3+1+1") == pareto.optimal_partition(5, 3)
