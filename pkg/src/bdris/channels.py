"""i.i.d. Rayleigh channel draws with reproducible per-trial substreams.

Each trial ``stream_index`` gets its own key
``mix64(mix64(seed) + GOLDEN * (stream_index + 1))``
and word ``j`` of that trial is ``mix64(key + GOLDEN * (j + 1))``, where
``mix64`` is the SplitMix64 finalizer. Draws therefore depend only on
``(seed, stream_index)``, never on batch size, evaluation order or worker
count, and a whole batch of trials is generated with vectorised integer ops.

A trial for ``n`` elements consumes ``4 n`` words. Word pairs are turned into
one CN(0, 1) entry by Box-Muller in complex form::

    u1 in (0, 1], u2 in [0, 1)
    h = sqrt(-ln u1) * exp(2j * pi * u2)

so real and imaginary parts are N(0, 1/2) and ``E|h|^2 = 1``. The first
``2 n`` words feed ``h_r`` and the next ``2 n`` feed ``h_t``. This layout is
frozen: changing it changes every seeded result.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .archgraph import ArchitectureError, Partition

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_U64 = (1 << 64) - 1


def mix64(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer, elementwise on a uint64 array (wrapping arithmetic)."""
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def stream_keys(seed: int, stream_indices) -> np.ndarray:
    idx = np.asarray(stream_indices, dtype=np.uint64)
    # pre-mixing the seed keeps seeds that differ by a multiple of GOLDEN apart
    base = mix64(np.array([int(seed) & _U64], dtype=np.uint64))
    with np.errstate(over="ignore"):
        return mix64(base + GOLDEN * (idx + np.uint64(1)))


def uniform_words(seed: int, stream_indices, count: int) -> np.ndarray:
    """Raw 64-bit words, shape ``(len(stream_indices), count)``."""
    keys = stream_keys(seed, stream_indices)[:, None]
    ctr = np.arange(1, count + 1, dtype=np.uint64)[None, :]
    with np.errstate(over="ignore"):
        return mix64(keys + GOLDEN * ctr)


def _complex_gaussian(words: np.ndarray) -> np.ndarray:
    # top 53 bits -> double in [0, 1)
    u = (words >> np.uint64(11)).astype(np.float64) * 2.0**-53
    u1 = 1.0 - u[..., 0::2]
    u2 = u[..., 1::2]
    return np.sqrt(-np.log(u1)) * np.exp(2j * np.pi * u2)


@dataclass(frozen=True, eq=False)
class ChannelPair:
    """Receive row ``h_r`` (RIS to receiver) and transmit column ``h_t``."""

    h_r: np.ndarray
    h_t: np.ndarray
    p_t: float = 1.0

    def __post_init__(self):
        h_r = np.asarray(self.h_r, dtype=np.complex128).reshape(-1)
        h_t = np.asarray(self.h_t, dtype=np.complex128).reshape(-1)
        if h_r.size == 0 or h_r.shape != h_t.shape:
            raise ValueError(f"h_r and h_t need equal nonzero length, got {h_r.size} and {h_t.size}")
        if not self.p_t > 0:
            raise ValueError(f"p_t must be positive, got {self.p_t}")
        h_r.flags.writeable = False
        h_t.flags.writeable = False
        object.__setattr__(self, "h_r", h_r)
        object.__setattr__(self, "h_t", h_t)

    @property
    def n(self) -> int:
        return self.h_r.size

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "re_hr", "im_hr", "re_ht", "im_ht"])
        for i, (r, t) in enumerate(zip(self.h_r, self.h_t), start=1):
            w.writerow([i] + [repr(float(x)) for x in (r.real, r.imag, t.real, t.imag)])
        return buf.getvalue()


def sample_channel_batch(n: int, seed: int, stream_indices) -> tuple[np.ndarray, np.ndarray]:
    """``(h_r, h_t)`` arrays of shape ``(trials, n)``; row ``k`` is stream ``stream_indices[k]``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    words = uniform_words(seed, np.atleast_1d(stream_indices), 4 * n)
    h = _complex_gaussian(words)
    return h[:, :n], h[:, n:]


def sample_channels(n: int, seed: int, stream_index: int = 0, p_t: float = 1.0) -> ChannelPair:
    h_r, h_t = sample_channel_batch(n, seed, [stream_index])
    return ChannelPair(h_r[0], h_t[0], p_t)


def split_by_partition(ch: ChannelPair, p: Partition) -> list[ChannelPair]:
    """Contiguous per-group slices of both vectors, in partition order."""
    if p.n != ch.n:
        raise ArchitectureError(f"partition sums to {p.n} but the channel has {ch.n} elements")
    return [ChannelPair(ch.h_r[o:o + s], ch.h_t[o:o + s], ch.p_t) for o, s in zip(p.offsets(), p.sizes)]
