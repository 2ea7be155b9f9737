"""Maximum received power per channel draw and its closed-form expectations.

All expectations are for unit transmit power; scale by ``p_t`` if needed.
The squared chi moment ratio ``(Gamma(m + 1/2) / Gamma(m))**2`` is evaluated
through log-gamma differences, since ``Gamma`` itself overflows a double just
past ``m = 171``. Subtracting two ``lgamma`` values loses about
``eps * lgamma(m)`` absolutely, so from ``m = 24`` on the difference comes
from its Stirling series instead::

    lgamma(m + 1/2) - lgamma(m) = ln(m)/2 - 1/(8m) + 1/(192m^3) - 1/(640m^5)
                                  + 17/(14336m^7) - 31/(18432m^9) + ...

truncated after the ``m^-9`` term (error below 1e-17 at ``m = 24``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .archgraph import ArchitectureError, Partition
from .channels import ChannelPair

# Gamma(3/2)**2 = pi/4, the squared mean of |h| for a single CN(0, 1) entry
GAMMA_3_2_SQ = math.pi / 4


def _check_order(m) -> int:
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    return int(m)


_SERIES_FROM = 24
_SERIES = ((1, -1 / 8), (3, 1 / 192), (5, -1 / 640), (7, 17 / 14336), (9, -31 / 18432))


def log_gamma_ratio(m: float) -> float:
    """``lgamma(m + 1/2) - lgamma(m)`` for ``m > 0``."""
    if m < _SERIES_FROM:
        return math.lgamma(m + 0.5) - math.lgamma(m)
    inv = 1.0 / m
    tail = math.fsum(c * inv**k for k, c in _SERIES)
    return 0.5 * math.log(m) + tail


@lru_cache(maxsize=4096)
def _gamma_ratio_sq(m: int) -> float:
    return math.exp(2.0 * log_gamma_ratio(m))


def gamma_ratio_sq(m: int) -> float:
    """``(Gamma(m + 1/2) / Gamma(m))**2``, i.e. ``E[||h||]**2`` for ``h ~ CN(0, I_m)``."""
    return _gamma_ratio_sq(_check_order(m))


@dataclass(frozen=True)
class GammaRatioTable:
    """``gamma_ratio_sq(m)`` for ``m = 1..m_max``, indexed by ``m``."""

    m_max: int
    values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        _check_order(self.m_max)
        vals = np.array([gamma_ratio_sq(m) for m in range(1, self.m_max + 1)])
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def __getitem__(self, m: int) -> float:
        m = _check_order(m)
        if m > self.m_max:
            raise IndexError(f"m={m} beyond table size {self.m_max}")
        return float(self.values[m - 1])


def laurent_approx(m: int) -> float:
    """Truncated large-``m`` expansion ``m - 1/4 + 1/(32 m)`` of :func:`gamma_ratio_sq`."""
    m = _check_order(m)
    return m - 0.25 + 1.0 / (32.0 * m)


def laurent_rel_error(m: int) -> float:
    exact = gamma_ratio_sq(m)
    return (exact - laurent_approx(m)) / exact


def _scaled_group_norms(h: np.ndarray, p: Partition) -> np.ndarray:
    # per-group 2-norms along the last axis, scaled by the group max to avoid overflow
    a = np.abs(h)
    offsets = p.offsets()
    scale = np.maximum.reduceat(a, offsets, axis=-1)
    safe = np.where(scale > 0, scale, 1.0)
    ratios = a / np.repeat(safe, p.sizes, axis=-1)
    return safe * np.sqrt(np.add.reduceat(ratios * ratios, offsets, axis=-1))


def max_power_batch(h_r: np.ndarray, h_t: np.ndarray, p: Partition, p_t: float = 1.0) -> np.ndarray:
    """Vectorised :func:`max_power` over the leading axis of ``(trials, n)`` arrays."""
    h_r = np.atleast_2d(h_r)
    h_t = np.atleast_2d(h_t)
    if h_r.shape != h_t.shape or h_r.shape[-1] != p.n:
        raise ArchitectureError(
            f"channel shapes {h_r.shape}/{h_t.shape} incompatible with partition summing to {p.n}")
    amp = np.sum(_scaled_group_norms(h_r, p) * _scaled_group_norms(h_t, p), axis=-1)
    return p_t * amp * amp


def max_power(ch: ChannelPair, p: Partition) -> float:
    """``p_t * (sum_g ||h_r,g|| ||h_t,g||)**2`` with groups as contiguous slices."""
    if p.n != ch.n:
        raise ArchitectureError(f"partition sums to {p.n} but the channel has {ch.n} elements")
    return float(max_power_batch(ch.h_r[None, :], ch.h_t[None, :], p, ch.p_t)[0])


def max_power_groups(ch: ChannelPair, groups: Sequence[Sequence[int]]) -> float:
    """As :func:`max_power` but with arbitrary 0-based index groups covering ``0..n-1``."""
    flat = sorted(i for g in groups for i in g)
    if flat != list(range(ch.n)):
        raise ArchitectureError("groups must cover every element exactly once")
    perm = [i for g in groups for i in g]
    p = Partition(tuple(len(g) for g in groups))
    return max_power(ChannelPair(ch.h_r[perm], ch.h_t[perm], ch.p_t), p)


def single_connected_power(ch: ChannelPair) -> float:
    amp = math.fsum(np.abs(ch.h_r * ch.h_t))
    return ch.p_t * amp * amp


def _as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else Partition(tuple(p))


def expected_power_exact(p: Partition | Sequence[int]) -> float:
    """Mean maximum power over i.i.d. Rayleigh draws, no approximation.

    ``sum N_g**2 + sum_{g1 != g2} r(N_g1) r(N_g2)`` with ``r = gamma_ratio_sq``;
    the ordered cross sum is evaluated as ``(sum r)**2 - sum r**2``.
    """
    p = _as_partition(p)
    r = [gamma_ratio_sq(s) for s in p.sizes]
    sq = math.fsum(float(s) * s for s in p.sizes)
    total = math.fsum(r)
    cross = total * total - math.fsum(x * x for x in r)
    return sq + cross


def expected_power_exact_double_sum(p: Partition | Sequence[int]) -> float:
    """Literal O(G^2) form of :func:`expected_power_exact`; kept as a cross-check."""
    p = _as_partition(p)
    r = [gamma_ratio_sq(s) for s in p.sizes]
    terms = [float(s) * s for s in p.sizes]
    terms += [r[i] * r[j] for i in range(len(r)) for j in range(len(r)) if i != j]
    return math.fsum(terms)


def expected_power_group(n: int, g: int) -> float:
    """``n**2 / g + g (g - 1) (Gamma(n/g + 1/2) / Gamma(n/g))**4``: ``g`` equal groups."""
    if n < 1 or g < 1 or n % g:
        raise ArchitectureError(f"number of groups g={g} must divide n={n}")
    r = gamma_ratio_sq(n // g)
    return n * n / g + g * (g - 1) * r * r


def expected_power_single(n: int) -> float:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return n + n * (n - 1) * GAMMA_3_2_SQ**2


def expected_power_fully(n: int) -> float:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return float(n * n)


def expected_power_approx(p: Partition | Sequence[int]) -> float:
    """Closed-form approximation after the large-size expansion and dropping ``1/(1024 N_g1 N_g2)``.

    ``N**2 + (G-1)(G-8N)/16 - G/16 + (4N-G+1)/64 * sum 1/N_g``.
    """
    p = _as_partition(p)
    n, g = p.n, p.g
    inv = math.fsum(1.0 / s for s in p.sizes)
    return n * n + (g - 1) * (g - 8 * n) / 16 - g / 16 + (4 * n - g + 1) / 64 * inv
