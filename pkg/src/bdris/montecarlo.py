"""Monte Carlo estimate of the expected maximum received power.

Trial ``k`` uses channel stream ``k`` of the seed, so each per-trial value
is fixed by ``(seed, k)`` alone. Per-trial values are summed with
``math.fsum`` (correctly rounded, hence independent of summation order),
which makes the result bit-identical for any batch size or worker count.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .archgraph import ArchitectureError, Partition
from .channels import sample_channel_batch
from .power import max_power_batch

DEFAULT_BATCH = 8192
Z_TOLERANCE = 4.0


@dataclass(frozen=True)
class MCResult:
    mean: float
    std_error: float
    trials: int
    seed: int
    partition: Partition

    @property
    def n(self) -> int:
        return self.partition.n


def trial_values(n: int, p: Partition, trials: int, seed: int,
                 batch: int = DEFAULT_BATCH, workers: int = 1) -> np.ndarray:
    """Maximum power for trials ``0..trials-1``, in trial order."""
    if p.n != n:
        raise ArchitectureError(f"partition sums to {p.n}, expected n={n}")
    starts = range(0, trials, batch)

    def run(start: int) -> np.ndarray:
        idx = np.arange(start, min(start + batch, trials), dtype=np.uint64)
        h_r, h_t = sample_channel_batch(n, seed, idx)
        return max_power_batch(h_r, h_t, p)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(run, starts))
    else:
        chunks = [run(s) for s in starts]
    return np.concatenate(chunks)


def run_mc(n: int, p: Partition | Sequence[int], trials: int, seed: int,
           batch: int = DEFAULT_BATCH, workers: int = 1) -> MCResult:
    if not isinstance(p, Partition):
        p = Partition(tuple(p))
    if trials < 2:
        raise ValueError(f"need at least 2 trials for a standard error, got {trials}")
    x = trial_values(n, p, trials, seed, batch=batch, workers=workers)
    mean = math.fsum(x) / trials
    var = math.fsum((x - mean) ** 2) / (trials - 1)
    return MCResult(mean, math.sqrt(var / trials), trials, seed, p)


def z_score(result: MCResult, closed_form: float) -> float:
    if result.std_error == 0:
        raise ZeroDivisionError("standard error is zero; z-score undefined")
    return (result.mean - closed_form) / result.std_error


def simulation_csv(rows: Sequence[tuple[MCResult, float]]) -> str:
    """Rows of ``(result, closed_form)`` in the simulation CSV layout."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "partition", "trials", "seed", "mean", "std_error", "closed_form", "z"])
    for res, closed in rows:
        w.writerow([res.n, str(res.partition), res.trials, res.seed, repr(res.mean),
                    repr(res.std_error), repr(closed), repr(z_score(res, closed))])
    return buf.getvalue()
