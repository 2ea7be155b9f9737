"""Graph model of BD-RIS architectures.

An architecture is an undirected simple graph over the ``n`` RIS elements
(vertices ``1..n``). Each edge is a tunable impedance interconnecting two
elements; every element is also tied to ground by its own tunable impedance,
so the circuit complexity is ``n + len(edges)``.

Under i.i.d. fading the achievable power depends on the graph only through the
sizes of its connected components, which is what :class:`Partition` captures.
"""
from __future__ import annotations

import itertools
import numbers
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]

KINDS = ("single", "fully", "tree", "group", "forest")


class ArchitectureError(ValueError):
    """Invalid architecture, partition or graph operation."""


@dataclass(frozen=True)
class Partition:
    """Ordered group sizes ``(N_1, ..., N_G)``.

    Order matters when the partition is laid over a channel vector (groups
    take contiguous slices in order). Use :meth:`canonical` for comparisons.
    """

    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes:
            raise ArchitectureError("partition must have at least one group")
        if any(s < 1 for s in sizes):
            raise ArchitectureError(f"group sizes must be >= 1, got {sizes}")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def of(cls, *sizes: int) -> Partition:
        return cls(tuple(sizes))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Partition:
        """Parse ``"33+1+1"`` or ``"1,1,14"``; optionally check the sum against ``n``."""
        parts = [t for t in re.split(r"[+,]", text.strip()) if t.strip()]
        try:
            sizes = tuple(int(t) for t in parts)
        except ValueError:
            raise ArchitectureError(f"cannot parse partition {text!r}") from None
        p = cls(sizes)
        if n is not None and p.n != n:
            raise ArchitectureError(f"partition {text!r} sums to {p.n}, expected n={n}")
        return p

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def g(self) -> int:
        return len(self.sizes)

    def canonical(self) -> Partition:
        return Partition(tuple(sorted(self.sizes, reverse=True)))

    def offsets(self) -> list[int]:
        """Start index (0-based) of every group when laid out contiguously."""
        return list(itertools.accumulate((0,) + self.sizes[:-1]))

    def groups(self) -> list[tuple[int, ...]]:
        """Contiguous 0-based index groups."""
        return [tuple(range(o, o + s)) for o, s in zip(self.offsets(), self.sizes)]

    def __iter__(self) -> Iterator[int]:
        return iter(self.sizes)

    def __len__(self) -> int:
        return len(self.sizes)

    def __str__(self) -> str:
        return "+".join(map(str, self.sizes))


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n + 1))
        self.size = [1] * (n + 1)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


@dataclass(frozen=True)
class Architecture:
    n: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, numbers.Integral) or self.n < 1:
            raise ArchitectureError(f"n must be a positive integer, got {self.n!r}")
        canon = set()
        for pair in self.edges:
            u, v = (int(x) for x in pair)
            if u == v:
                raise ArchitectureError(f"self-loop at vertex {u}")
            for x in (u, v):
                if not 1 <= x <= self.n:
                    raise ArchitectureError(f"vertex {x} outside [1, {self.n}]")
            canon.add((min(u, v), max(u, v)))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def _disjoint_set(self) -> _DisjointSet:
        ds = _DisjointSet(self.n)
        for u, v in self.edges:
            ds.union(u, v)
        return ds

    def to_text(self) -> str:
        lines = [f"n={self.n}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Architecture:
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or not lines[0].startswith("n="):
            raise ArchitectureError("edge-list must start with a header line 'n=<N>'")
        try:
            n = int(lines[0][2:])
            edges = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
        except ValueError as exc:
            raise ArchitectureError(f"malformed edge-list: {exc}") from None
        if any(len(e) != 2 for e in edges):
            raise ArchitectureError("every edge line must hold exactly two vertices")
        return cls(n, tuple(edges))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path: str | Path) -> Architecture:
        return cls.from_text(Path(path).read_text())


def new_architecture(n: int, edges: Iterable[Sequence[int]] = ()) -> Architecture:
    return Architecture(n, tuple(tuple(e) for e in edges))


def component_groups(arch: Architecture) -> list[tuple[int, ...]]:
    """Vertex sets (1-based) of the connected components.

    Sorted by decreasing size, ties by smallest vertex.
    """
    ds = arch._disjoint_set()
    comps: dict[int, list[int]] = {}
    for v in range(1, arch.n + 1):
        comps.setdefault(ds.find(v), []).append(v)
    return sorted((tuple(c) for c in comps.values()), key=lambda c: (-len(c), c[0]))


def connected_components(arch: Architecture) -> Partition:
    """Component sizes in nonincreasing order."""
    return Partition(tuple(len(c) for c in component_groups(arch)))


def is_forest(arch: Architecture) -> bool:
    ds = _DisjointSet(arch.n)
    return all(ds.union(u, v) for u, v in arch.edges)


def circuit_complexity(arch: Architecture) -> int:
    # one grounding impedance per element plus one per interconnection
    return arch.n + arch.num_edges


def remove_cycle_edge(arch: Architecture) -> Architecture:
    """Drop one edge lying on a cycle.

    Edges are scanned in sorted order; the first one whose endpoints are
    already joined by earlier edges closes a cycle, so removing it keeps
    every component intact.
    """
    ds = _DisjointSet(arch.n)
    for edge in arch.edges:
        if not ds.union(*edge):
            return Architecture(arch.n, tuple(e for e in arch.edges if e != edge))
    raise ArchitectureError("architecture is a forest; it has no cycle edge to remove")


def _blocks(n: int, size: int) -> list[range]:
    return [range(start, start + size) for start in range(1, n + 1, size)]


def canonical_architecture(kind: str, n: int, group_size: int | None = None) -> Architecture:
    """Reference architectures: single, fully, tree, group and forest connected.

    ``tree`` is realised as the path 1-2-...-n; any spanning tree has the
    same single component and hence the same performance. ``group`` and
    ``forest`` use contiguous blocks of ``group_size`` elements, fully
    connected or path connected respectively.
    """
    if n < 1:
        raise ArchitectureError(f"n must be >= 1, got {n}")
    if kind == "single":
        return Architecture(n)
    if kind == "fully":
        return Architecture(n, tuple(itertools.combinations(range(1, n + 1), 2)))
    if kind == "tree":
        return Architecture(n, tuple((v, v + 1) for v in range(1, n)))
    if kind in ("group", "forest"):
        if group_size is None or group_size < 1 or n % group_size:
            raise ArchitectureError(f"group size {group_size} must divide n={n}")
        edges: list[Edge] = []
        for block in _blocks(n, group_size):
            if kind == "group":
                edges.extend(itertools.combinations(block, 2))
            else:
                edges.extend(zip(block[:-1], block[1:]))
        return Architecture(n, tuple(edges))
    raise ArchitectureError(f"unknown architecture kind {kind!r}; expected one of {KINDS}")
