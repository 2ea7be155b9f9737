"""Invariant checks behind ``bdris verify``.

Each check returns a :class:`Check`; nothing raises on a failed property, so
one run reports every problem at once.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import archgraph as ag
from .archgraph import Architecture, Partition
from .channels import sample_channels
from .pareto import (BRUTE_FORCE_MAX_N, brute_force_optimal_partition, enumerate_partitions,
                     optimal_partition, pareto_frontier, pareto_point)
from .power import (expected_power_exact, expected_power_fully, expected_power_single, max_power,
                    single_connected_power)
from .scattering import received_power, synthesize, verify_scattering


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}" + (f": {self.detail}" if self.detail else "")


def random_forest(n: int, rng: np.random.Generator, attach_prob: float = 0.7) -> Architecture:
    """Random forest: each vertex after the first joins a random earlier one with ``attach_prob``."""
    order = rng.permutation(n) + 1
    edges = []
    for k in range(1, n):
        if rng.random() < attach_prob:
            edges.append((int(order[k]), int(order[rng.integers(k)])))
    return Architecture(n, tuple(edges))


def random_cyclic_graph(n: int, rng: np.random.Generator) -> Architecture:
    """Random forest plus chords until at least one cycle exists; needs ``n >= 3``."""
    if n < 3:
        raise ValueError("a simple graph needs at least 3 vertices to hold a cycle")
    arch = random_forest(n, rng)
    edges = set(arch.edges)
    while ag.is_forest(Architecture(n, tuple(edges))):
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False) + 1)
        edges.add((min(u, v), max(u, v)))
    for _ in range(int(rng.integers(0, 3))):
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False) + 1)
        edges.add((min(u, v), max(u, v)))
    return Architecture(n, tuple(edges))


def check_forest_components(n: int, trials: int, rng: np.random.Generator) -> Check:
    for _ in range(trials):
        arch = random_forest(n, rng)
        comps = ag.connected_components(arch)
        if not ag.is_forest(arch) or comps.g != n - arch.num_edges or comps.n != n:
            return Check("forest components = n - edges", False, f"counterexample {arch.edges}")
    return Check("forest components = n - edges", True, f"{trials} random forests")


def check_cycle_removal(n: int, trials: int, rng: np.random.Generator, seed: int) -> Check:
    name = "cycle-edge removal keeps power, complexity - 1"
    if n < 3:
        return Check(name, True, "skipped, n < 3")
    ch = sample_channels(n, seed)
    for _ in range(trials):
        arch = random_cyclic_graph(n, rng)
        cut = ag.remove_cycle_edge(arch)
        before, after = ag.connected_components(arch), ag.connected_components(cut)
        if (before != after or ag.circuit_complexity(cut) != ag.circuit_complexity(arch) - 1
                or max_power(ch, before) != max_power(ch, after)):
            return Check(name, False, f"counterexample {arch.edges}")
    return Check(name, True, f"{trials} random cyclic graphs")


def check_canonical_complexities(n: int) -> Check:
    got = {
        "single": ag.circuit_complexity(ag.canonical_architecture("single", n)),
        "tree": ag.circuit_complexity(ag.canonical_architecture("tree", n)),
        "fully": ag.circuit_complexity(ag.canonical_architecture("fully", n)),
    }
    want = {"single": n, "tree": 2 * n - 1, "fully": n * (n + 1) // 2}
    for k in range(1, n + 1):
        if n % k == 0:
            g = n // k
            got[f"forest-{k}"] = ag.circuit_complexity(ag.canonical_architecture("forest", n, k))
            got[f"group-{k}"] = ag.circuit_complexity(ag.canonical_architecture("group", n, k))
            want[f"forest-{k}"] = 2 * n - g
            want[f"group-{k}"] = n * (k + 1) // 2
    bad = [k for k in want if got[k] != want[k]]
    return Check("canonical architecture complexities", not bad, ", ".join(bad))


def check_frontier(n: int) -> Check:
    pts = pareto_frontier(n)  # raises if closed form and plug-in disagree
    increasing = all(b.value > a.value for a, b in zip(pts, pts[1:]))
    return Check("frontier closed form = plug-in, strictly increasing", increasing, f"{len(pts)} points")


def check_endpoints(n: int) -> Check:
    top = pareto_point(n, 2 * n - 1).value
    bottom = pareto_point(n, n).value
    ok = (abs(top - expected_power_fully(n)) <= 1e-12 * n * n
          and abs(bottom - expected_power_single(n)) <= 1e-9 * bottom)
    return Check("frontier endpoints = single / fully", ok, f"{bottom!r} .. {top!r}")


def check_single_connected(n: int, draws: int, seed: int) -> Check:
    ones = Partition((1,) * n)
    worst = 0.0
    for k in range(draws):
        ch = sample_channels(n, seed, k)
        ref = single_connected_power(ch)
        worst = max(worst, abs(max_power(ch, ones) - ref) / ref)
    return Check("single-connected power = all-singleton bound", worst <= 1e-12, f"max rel err {worst:.2e}")


def check_exhaustive(n: int) -> list[Check]:
    if n > BRUTE_FORCE_MAX_N:
        return [Check("exhaustive optimum and dominance", True, f"skipped, n > {BRUTE_FORCE_MAX_N}")]
    disagree, violations = [], []
    for g in range(1, n + 1):
        want = optimal_partition(n, g)
        for obj in ("exact_expected_power", "inverse_size_sum"):
            res = brute_force_optimal_partition(n, g, obj)
            if res.partition != want or res.ties:
                disagree.append(f"g={g} {obj}: {res.partition}")
        bound = pareto_point(n, 2 * n - g).value + 1e-9
        violations += [str(p) for p in enumerate_partitions(n, g) if expected_power_exact(p) > bound]
    return [
        Check("brute-force optimum = (n-g+1, 1, ..., 1)", not disagree, "; ".join(disagree)),
        Check("no partition beats the frontier", not violations, ", ".join(violations[:5])),
    ]


def check_achievability(n: int, draws: int, seed: int) -> Check:
    worst = 0.0
    shapes = {Partition((n,)), Partition((1,) * n), optimal_partition(n, max(1, (n + 1) // 2))}
    for k in range(draws):
        ch = sample_channels(n, seed, k)
        for p in shapes:
            theta = synthesize(ch, p)
            if not verify_scattering(theta).ok:
                return Check("synthesized matrices reach the bound", False, f"residuals fail, partition {p}")
            ref = max_power(ch, p)
            worst = max(worst, abs(received_power(theta, ch) - ref) / ref)
    return Check("synthesized matrices reach the bound", worst <= 1e-9, f"max rel err {worst:.2e}")


def run_all(n: int, seed: int = 0, graph_trials: int = 200, draws: int = 20) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = [
        check_forest_components(n, graph_trials, rng),
        check_cycle_removal(n, graph_trials, rng, seed),
        check_canonical_complexities(n),
        check_frontier(n),
        check_endpoints(n),
        check_single_connected(n, draws, seed),
    ]
    checks += check_exhaustive(n)
    checks.append(check_achievability(n, draws, seed))
    return checks


def summary(checks: list[Check]) -> str:
    failed = sum(not c.passed for c in checks)
    return f"{len(checks) - failed}/{len(checks)} checks passed" + (f", {failed} failed" if failed else "")

