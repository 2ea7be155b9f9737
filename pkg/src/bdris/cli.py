"""Command-line interface: ``bdris <subcommand> [flags]``.

CSV goes to stdout or ``--out``; reports and diagnostics go to stderr.
Exit codes: 0 success, 2 invalid arguments, 3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import archgraph as ag
from . import pareto, power, verify
from .archgraph import Architecture, ArchitectureError, Partition
from .channels import sample_channels
from .montecarlo import run_mc, simulation_csv
from .scattering import received_power, synthesize, verify_scattering

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    c: int | None = None
    g: int | None = None
    partition: Partition | None = None
    arch: Architecture | None = None
    trials: int = 100_000
    seed: int = 0
    stream: int = 0
    workers: int = 1
    group_sizes: tuple[int, ...] = (2, 4, 8, 16)
    m_max: int = 10
    exhaustive: bool = False
    out: Path | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        cfg = cls(command=ns.command, out=getattr(ns, "out", None))
        for name in ("n", "c", "g", "trials", "seed", "stream", "workers", "m_max", "exhaustive"):
            if getattr(ns, name, None) is not None:
                setattr(cfg, name, getattr(ns, name))
        if getattr(ns, "arch", None):
            cfg.arch = Architecture.load(ns.arch)
            if cfg.n is None:
                cfg.n = cfg.arch.n
            elif cfg.n != cfg.arch.n:
                raise UsageError(f"--n {cfg.n} but the architecture file has n={cfg.arch.n}")
        if cfg.n is not None and cfg.n < 1:
            raise UsageError(f"--n must be >= 1, got {cfg.n}")
        if getattr(ns, "partition", None):
            if cfg.n is None:
                raise UsageError("--partition needs --n")
            cfg.partition = Partition.parse(ns.partition, cfg.n)
        if getattr(ns, "group_sizes", None):
            try:
                cfg.group_sizes = tuple(int(t) for t in ns.group_sizes.replace("+", ",").split(",") if t)
            except ValueError:
                raise UsageError(f"cannot parse --group-sizes {ns.group_sizes!r}") from None
        if cfg.seed < 0 or cfg.seed >= 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        if cfg.trials < 2:
            raise UsageError(f"--trials must be >= 2, got {cfg.trials}")
        if cfg.workers < 1:
            raise UsageError(f"--workers must be >= 1, got {cfg.workers}")
        if cfg.m_max < 1:
            raise UsageError(f"--m-max must be >= 1, got {cfg.m_max}")
        return cfg


def _default_seed() -> int:
    raw = os.environ.get("BDRIS_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        Path(cfg.out).write_text(text)


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_frontier(cfg: RunConfig) -> int:
    _emit(cfg, pareto.frontier_csv(pareto.pareto_frontier(cfg.n)))
    return EXIT_OK


def cmd_architectures(cfg: RunConfig) -> int:
    _emit(cfg, pareto.architecture_csv(pareto.architecture_points(cfg.n, cfg.group_sizes)))
    return EXIT_OK


def cmd_simulate(cfg: RunConfig) -> int:
    p = cfg.partition or Partition((cfg.n,))
    res = run_mc(cfg.n, p, cfg.trials, cfg.seed, workers=cfg.workers)
    _emit(cfg, simulation_csv([(res, power.expected_power_exact(p))]))
    return EXIT_OK


def cmd_optimal_partition(cfg: RunConfig) -> int:
    if (cfg.g is None) == (cfg.c is None):
        raise UsageError("give exactly one of --g or --c")
    g = cfg.g if cfg.g is not None else pareto.groups_for_complexity(cfg.n, cfg.c)
    best = pareto.optimal_partition(cfg.n, g)
    rows = [["method", "groups", "partition", "expected_power", "agrees", "ties"],
            ["closed_form", g, str(best), repr(power.expected_power_exact(best)), "", ""]]
    agree = True
    if cfg.exhaustive:
        for obj in pareto.OBJECTIVES:
            res = pareto.brute_force_optimal_partition(cfg.n, g, obj)
            ok = res.partition == best
            agree &= ok
            rows.append([f"brute_force:{obj}", g, str(res.partition),
                         repr(power.expected_power_exact(res.partition)), str(ok).lower(),
                         " ".join(map(str, res.ties))])
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    _emit(cfg, buf.getvalue())
    return EXIT_OK if agree else EXIT_VERIFY


def cmd_synthesize(cfg: RunConfig) -> int:
    ch = sample_channels(cfg.n, cfg.seed, cfg.stream)
    if cfg.arch is not None:
        groups = [tuple(v - 1 for v in comp) for comp in ag.component_groups(cfg.arch)]
        theta = synthesize(ch, groups)
        bound = power.max_power_groups(ch, groups)
    else:
        p = cfg.partition or Partition((cfg.n,))
        theta = synthesize(ch, p)
        bound = power.max_power(ch, p)
    report = verify_scattering(theta)
    achieved = received_power(theta, ch)
    _emit(cfg, theta.to_csv())
    for line in report.lines():
        _log(line)
    rel = abs(achieved - bound) / bound if bound > 0 else abs(achieved)
    reached = rel <= 1e-9
    _log(f"received power {achieved!r}, bound {bound!r}, rel err {rel:.2e}  {'pass' if reached else 'FAIL'}")
    if theta.degenerate_groups:
        _log(f"zero-channel groups given identity blocks: {list(theta.degenerate_groups)}")
    return EXIT_OK if report.ok and reached else EXIT_VERIFY


def cmd_laurent(cfg: RunConfig) -> int:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "gamma_ratio_sq", "laurent_approx", "rel_error"])
    for m in range(1, cfg.m_max + 1):
        w.writerow([m, repr(power.gamma_ratio_sq(m)), repr(power.laurent_approx(m)),
                    repr(power.laurent_rel_error(m))])
    _emit(cfg, buf.getvalue())
    return EXIT_OK


def _arch_checks(arch: Architecture) -> list[verify.Check]:
    comps = ag.connected_components(arch)
    c = ag.circuit_complexity(arch)
    forest = ag.is_forest(arch)
    checks = [verify.Check("architecture", True,
                           f"n={arch.n}, edges={arch.num_edges}, complexity={c}, components={comps}")]
    if forest:
        checks.append(verify.Check("forest: components = n - edges", comps.g == arch.n - arch.num_edges))
    else:
        trimmed = ag.remove_cycle_edge(arch)
        checks.append(verify.Check("cycle-edge removal keeps components",
                                   ag.connected_components(trimmed) == comps,
                                   "architecture has a cycle, so it is not on the frontier"))
    if forest and c <= 2 * arch.n - 1:
        optimal = comps == pareto.optimal_partition(arch.n, comps.g)
        frontier = pareto.pareto_point(arch.n, c).value
        checks.append(verify.Check("on the frontier" if optimal else "below the frontier", True,
                                   f"{power.expected_power_exact(comps)!r} vs {frontier!r}"))
    return checks


def cmd_verify(cfg: RunConfig) -> int:
    checks = verify.run_all(cfg.n, seed=cfg.seed)
    if cfg.arch is not None:
        checks += _arch_checks(cfg.arch)
    lines = [c.line() for c in checks] + [verify.summary(checks)]
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


COMMANDS = {
    "frontier": cmd_frontier,
    "architectures": cmd_architectures,
    "simulate": cmd_simulate,
    "optimal-partition": cmd_optimal_partition,
    "synthesize": cmd_synthesize,
    "laurent": cmd_laurent,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bdris", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    seed = _default_seed()

    def add(name, help, n_required=True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--n", type=int, required=n_required, help="number of RIS elements")
        sp.add_argument("--out", type=Path, help="write output here instead of stdout")
        return sp

    add("frontier", "Pareto frontier CSV for N elements")
    sp = add("architectures", "reference architecture points (single/tree/fully/forest/group)")
    sp.add_argument("--group-sizes", default="2,4,8,16")
    sp = add("simulate", "Monte Carlo estimate of the expected maximum power")
    sp.add_argument("--partition", help="group sizes, e.g. 1,1,14 or 14+1+1")
    sp.add_argument("--trials", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=seed)
    sp.add_argument("--workers", type=int, default=1)
    sp = add("optimal-partition", "optimal group sizes for G groups or complexity C")
    sp.add_argument("--g", type=int)
    sp.add_argument("--c", type=int)
    sp.add_argument("--exhaustive", action="store_true", help="also run the brute-force search")
    sp = add("synthesize", "scattering matrix reaching the bound for one channel draw", n_required=False)
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--partition")
    src.add_argument("--arch", type=Path, help="edge-list file with header n=<N>")
    sp.add_argument("--seed", type=int, default=seed)
    sp.add_argument("--stream", type=int, default=0, help="channel stream index")
    sp = sub.add_parser("laurent", help="relative error of the large-m gamma-ratio expansion")
    sp.add_argument("--m-max", type=int, default=10)
    sp.add_argument("--out", type=Path)
    sp = add("verify", "run the invariant suite", n_required=False)
    sp.add_argument("--arch", type=Path, help="also analyse this edge-list architecture")
    sp.add_argument("--seed", type=int, default=seed)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig.from_args(ns)
        if cfg.n is None and cfg.command not in ("laurent",):
            raise UsageError("--n (or --arch) is required")
        return COMMANDS[cfg.command](cfg)
    except (UsageError, ArchitectureError, ValueError, OSError) as exc:
        print(f"bdris {ns.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
