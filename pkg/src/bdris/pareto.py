"""Optimal group sizes, the performance-complexity frontier and reference architectures.

An optimal architecture with complexity ``C`` is a forest with ``G = 2N - C``
components, and among partitions with ``G`` parts the expected power is
maximised by one large group of ``N - G + 1`` elements plus ``G - 1``
singletons. :func:`brute_force_optimal_partition` checks that claim by
enumeration, independently of the closed form.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .archgraph import ArchitectureError, Partition
from .power import (expected_power_exact, expected_power_fully, expected_power_group,
                    expected_power_single, log_gamma_ratio)

BRUTE_FORCE_MAX_N = 30
FRONTIER_RTOL = 1e-9
OBJECTIVES = ("exact_expected_power", "inverse_size_sum")


class FormulaMismatch(RuntimeError):
    """Closed-form frontier value disagrees with the plug-in of the optimal partition."""


@dataclass(frozen=True)
class ParetoPoint:
    complexity: int
    groups: int
    partition: Partition
    value: float
    value_plugin: float = math.nan

    def __post_init__(self):
        n = self.partition.n
        if not n <= self.complexity <= 2 * n - 1:
            raise ArchitectureError(f"complexity {self.complexity} outside [{n}, {2 * n - 1}]")
        if self.groups != 2 * n - self.complexity or self.partition.g != self.groups:
            raise ArchitectureError("a frontier point needs G = 2N - C groups")
        if not self.value > 0:
            raise ValueError(f"frontier value must be positive, got {self.value}")


@dataclass(frozen=True)
class LabeledPoint:
    label: str
    complexity: int
    value: float


@dataclass(frozen=True)
class BruteForceResult:
    partition: Partition
    value: float
    ties: tuple[Partition, ...] = field(default=())
    evaluated: int = 0


def _check_n_g(n: int, g: int) -> None:
    if n < 1:
        raise ArchitectureError(f"n must be >= 1, got {n}")
    if not 1 <= g <= n:
        raise ArchitectureError(f"g={g} outside [1, {n}]")


def groups_for_complexity(n: int, c: int) -> int:
    if n < 1 or not n <= c <= 2 * n - 1:
        raise ArchitectureError(f"complexity {c} outside [{n}, {2 * n - 1}] for n={n}")
    return 2 * n - c


def optimal_partition(n: int, g: int) -> Partition:
    _check_n_g(n, g)
    return Partition((n - g + 1,) + (1,) * (g - 1))


def _parts(n: int, g: int, largest: int) -> Iterator[tuple[int, ...]]:
    # partitions of n into exactly g parts, each <= largest, nonincreasing
    if g == 1:
        if n <= largest:
            yield (n,)
        return
    for first in range(min(largest, n - g + 1), 0, -1):
        if first * g < n:
            break
        for rest in _parts(n - first, g - 1, first):
            yield (first,) + rest


def enumerate_partitions(n: int, g: int) -> Iterator[Partition]:
    """Every partition of ``n`` into exactly ``g`` positive parts, nonincreasing, lexicographically descending."""
    _check_n_g(n, g)
    for sizes in _parts(n, g, n):
        yield Partition(sizes)


def _objective(name: str):
    if name == "exact_expected_power":
        return expected_power_exact
    if name == "inverse_size_sum":
        return lambda p: sum((Fraction(1, s) for s in p.sizes), Fraction(0))
    raise ValueError(f"unknown objective {name!r}; expected one of {OBJECTIVES}")


def brute_force_optimal_partition(n: int, g: int, objective: str = "exact_expected_power",
                                  rtol: float = 1e-12) -> BruteForceResult:
    """Argmax of ``objective`` over all partitions of ``n`` into ``g`` parts.

    ``inverse_size_sum`` is evaluated in exact rationals. Ties (within
    ``rtol`` for the float objective) keep the lexicographically largest
    partition and list the others in ``ties``.
    """
    _check_n_g(n, g)
    if n > BRUTE_FORCE_MAX_N:
        raise ArchitectureError(f"n={n} exceeds the enumeration guard {BRUTE_FORCE_MAX_N}")
    f = _objective(objective)
    best, best_val, ties, count = None, None, [], 0
    for p in enumerate_partitions(n, g):
        val = f(p)
        count += 1
        # enumeration is lexicographically descending, so the incumbent wins ties
        if best is not None and _close(val, best_val, rtol):
            ties.append(p)
        elif best is None or val > best_val:
            best, best_val, ties = p, val, []
    return BruteForceResult(best, float(best_val), tuple(ties), count)


def _close(a, b, rtol: float) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(a - b) <= rtol * max(abs(a), abs(b))


def frontier_closed_form(n: int, c: int) -> float:
    """Maximum expected power at complexity ``c``, written directly in ``n`` and ``c``."""
    g = groups_for_complexity(n, c)
    lg_3_2 = math.lgamma(1.5)
    gamma_3_2_pow4 = math.exp(4.0 * lg_3_2)
    ratio_sq = math.exp(2.0 * (log_gamma_ratio(c - n + 1) + lg_3_2))
    return ((c - n) ** 2 + c
            + (g - 1) * (g - 2) * gamma_3_2_pow4
            + 2 * (g - 1) * ratio_sq)


def pareto_point(n: int, c: int) -> ParetoPoint:
    g = groups_for_complexity(n, c)
    part = optimal_partition(n, g)
    closed = frontier_closed_form(n, c)
    plugin = expected_power_exact(part)
    if abs(closed - plugin) > FRONTIER_RTOL * abs(plugin):
        raise FormulaMismatch(f"n={n}, C={c}: closed form {closed!r} vs plug-in {plugin!r}")
    return ParetoPoint(c, g, part, closed, plugin)


def pareto_frontier(n: int) -> list[ParetoPoint]:
    return [pareto_point(n, c) for c in range(n, 2 * n)]


def architecture_points(n: int, group_sizes: Sequence[int] = (2, 4, 8, 16)) -> list[LabeledPoint]:
    """Complexity and expected power of the reference architectures.

    Forest-connected with groups of ``k`` costs ``2N - N/k``; group-connected
    costs ``N (k + 1) / 2``. Both reach the power of ``N/k`` equal groups.
    """
    if n < 1:
        raise ArchitectureError(f"n must be >= 1, got {n}")
    for k in group_sizes:
        if k < 1 or n % k:
            raise ArchitectureError(f"group size {k} must divide n={n}")
    full = expected_power_fully(n)
    points = [
        LabeledPoint("single", n, expected_power_single(n)),
        LabeledPoint("tree", 2 * n - 1, full),
        LabeledPoint("fully", n * (n + 1) // 2, full),
    ]
    for k in group_sizes:
        g = n // k
        value = expected_power_group(n, g)
        points.append(LabeledPoint(f"forest-{k}", 2 * n - g, value))
        points.append(LabeledPoint(f"group-{k}", n * (k + 1) // 2, value))
    return points


def frontier_csv(points: Sequence[ParetoPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["complexity", "groups", "partition", "value_closed_form", "value_plugin"])
    for p in points:
        w.writerow([p.complexity, p.groups, str(p.partition), repr(p.value), repr(p.value_plugin)])
    return buf.getvalue()


def architecture_csv(points: Sequence[LabeledPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "complexity", "value"])
    for p in points:
        w.writerow([p.label, p.complexity, repr(p.value)])
    return buf.getvalue()
