"""Symmetric unitary scattering matrices that reach the per-group power bound.

For one group with unit directions ``a = h_t / ||h_t||`` and
``b = conj(h_r) / ||h_r||`` we need a block with ``T = T^T``, ``T^H T = I``
and ``T a = b``; then ``|h_r T h_t| = ||h_r|| ||h_t||``.

Write ``T = V V^T`` with ``V`` unitary (a Takagi form). Let ``s = b^T a`` and
``p = x w e1 + i y w e2`` with ``w = exp(i arg(s) / 2)``,
``x = sqrt((1 + |s|) / 2)``, ``y = sqrt((1 - |s|) / 2)``, so that
``p^T p = s``. If ``V p = b`` and ``V conj(p) = conj(a)`` then
``V^T a = p`` and ``T a = V p = b``. Such a ``V`` exists because both pairs
have the same Gram matrix. With ``r1 = b`` and ``r2`` the unit vector along
the part of ``conj(a)`` orthogonal to ``b``, it is::

    V e1 = conj(w) x r1 + w y r2
    V e2 = -i conj(w) y r1 + i w x r2

and columns ``e3..`` go to any orthonormal completion. The basis comes from
a complete Householder QR of ``[b, conj(a)]``, so ``V`` stays unitary to
machine precision even when ``b`` and ``conj(a)`` are (nearly) parallel; in
that collinear case ``y = 0`` and ``r2`` is any unit vector orthogonal to
``b``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .archgraph import ArchitectureError, Partition
from .channels import ChannelPair, split_by_partition

UNITARY_TOL = 1e-10
SYMMETRY_TOL = 1e-12


def _phase(z: complex) -> complex:
    mag = abs(z)
    return z / mag if mag > 0 else 1.0 + 0j


@dataclass(frozen=True, eq=False)
class ScatteringMatrix:
    """``entries`` is block diagonal with respect to ``groups`` (0-based index sets)."""

    entries: np.ndarray
    groups: tuple[tuple[int, ...], ...]
    degenerate_groups: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def partition(self) -> Partition:
        return Partition(tuple(len(g) for g in self.groups))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row", "col", "re", "im"])
        rows, cols = np.nonzero(self.entries)
        for r, c in zip(rows, cols):
            z = self.entries[r, c]
            w.writerow([r + 1, c + 1, repr(float(z.real)), repr(float(z.imag))])
        return buf.getvalue()


@dataclass(frozen=True)
class VerificationReport:
    unitarity: float
    symmetry: float
    block_pattern: float
    unitary_ok: bool
    symmetric_ok: bool
    pattern_ok: bool

    @property
    def ok(self) -> bool:
        return self.unitary_ok and self.symmetric_ok and self.pattern_ok

    def lines(self) -> list[str]:
        def mark(flag):
            return "pass" if flag else "FAIL"
        return [
            f"unitarity  ||T^H T - I||_F = {self.unitarity:.3e}  {mark(self.unitary_ok)}",
            f"symmetry   ||T - T^T||_F   = {self.symmetry:.3e}  {mark(self.symmetric_ok)}",
            f"off-block  ||T_off||_F     = {self.block_pattern:.3e}  {mark(self.pattern_ok)}",
        ]


def synthesize_group(ch_g: ChannelPair) -> np.ndarray:
    """Symmetric unitary block mapping ``h_t`` onto the direction of ``conj(h_r)``."""
    nr, nt = np.linalg.norm(ch_g.h_r), np.linalg.norm(ch_g.h_t)
    if nr == 0 or nt == 0:
        raise ArchitectureError("zero-norm group channel has no defined direction")
    a = ch_g.h_t / nt
    b = np.conj(ch_g.h_r) / nr
    n = a.size
    if n == 1:
        return np.array([[_phase(b[0] / a[0])]])

    s = complex(b @ a)
    mag = min(abs(s), 1.0)
    w = _phase(s) ** 0.5 if mag > 0 else 1.0 + 0j
    x = np.sqrt((1.0 + mag) / 2.0)
    y = np.sqrt((1.0 - mag) / 2.0)

    q, r = np.linalg.qr(np.column_stack([b, np.conj(a)]), mode="complete")
    # undo the QR phases: r1 = b exactly, r2 along the orthogonal part of conj(a)
    r1 = b
    r2 = q[:, 1] * _phase(r[1, 1])
    v = np.empty((n, n), dtype=np.complex128)
    v[:, 0] = np.conj(w) * x * r1 + w * y * r2
    v[:, 1] = -1j * np.conj(w) * y * r1 + 1j * w * x * r2
    v[:, 2:] = q[:, 2:]
    theta = v @ v.T
    return 0.5 * (theta + theta.T)


def assemble_block_diagonal(blocks: Sequence[np.ndarray], p: Partition | Sequence[Sequence[int]]) -> ScatteringMatrix:
    """Embed ``blocks`` on the diagonal; ``p`` is a partition (contiguous) or explicit index groups."""
    groups = tuple(tuple(g) for g in (p.groups() if isinstance(p, Partition) else p))
    if len(blocks) != len(groups):
        raise ArchitectureError(f"{len(blocks)} blocks for {len(groups)} groups")
    n = sum(len(g) for g in groups)
    if sorted(i for g in groups for i in g) != list(range(n)):
        raise ArchitectureError("groups must cover every element exactly once")
    theta = np.zeros((n, n), dtype=np.complex128)
    for blk, g in zip(blocks, groups):
        blk = np.asarray(blk)
        if blk.shape != (len(g), len(g)):
            raise ArchitectureError(f"block of shape {blk.shape} for a group of {len(g)} elements")
        theta[np.ix_(g, g)] = blk
    return ScatteringMatrix(theta, groups)


def synthesize(ch: ChannelPair, p: Partition | Sequence[Sequence[int]]) -> ScatteringMatrix:
    """Block-diagonal matrix reaching the maximum power for this grouping.

    Groups whose channel vanishes get an identity block and are listed in
    ``degenerate_groups``; they contribute no power either way.
    """
    if isinstance(p, Partition):
        groups = p.groups()
        parts = split_by_partition(ch, p)
    else:
        groups = [tuple(g) for g in p]
        parts = [ChannelPair(ch.h_r[list(g)], ch.h_t[list(g)], ch.p_t) for g in groups]
    blocks, degenerate = [], []
    for k, part in enumerate(parts):
        if not np.any(part.h_r) or not np.any(part.h_t):
            blocks.append(np.eye(part.n, dtype=np.complex128))
            degenerate.append(k)
        else:
            blocks.append(synthesize_group(part))
    theta = assemble_block_diagonal(blocks, groups)
    return ScatteringMatrix(theta.entries, theta.groups, tuple(degenerate))


def synthesize_single(ch: ChannelPair) -> ScatteringMatrix:
    """Diagonal co-phasing matrix ``exp(-i (arg h_r + arg h_t))``."""
    phases = np.exp(-1j * (np.angle(ch.h_r) + np.angle(ch.h_t)))
    return ScatteringMatrix(np.diag(phases), tuple((i,) for i in range(ch.n)))


def received_power(theta: ScatteringMatrix | np.ndarray, ch: ChannelPair) -> float:
    t = theta.entries if isinstance(theta, ScatteringMatrix) else np.asarray(theta)
    if t.shape != (ch.n, ch.n):
        raise ArchitectureError(f"matrix shape {t.shape} does not match {ch.n} elements")
    return float(ch.p_t * abs(ch.h_r @ t @ ch.h_t) ** 2)


def verify_scattering(theta: ScatteringMatrix) -> VerificationReport:
    t = theta.entries
    n = t.shape[0]
    unitarity = float(np.linalg.norm(t.conj().T @ t - np.eye(n)))
    symmetry = float(np.linalg.norm(t - t.T))
    mask = np.ones((n, n), dtype=bool)
    for g in theta.groups:
        mask[np.ix_(g, g)] = False
    off = t[mask]
    return VerificationReport(
        unitarity=unitarity,
        symmetry=symmetry,
        block_pattern=float(np.linalg.norm(off)),
        unitary_ok=unitarity <= UNITARY_TOL * n,
        symmetric_ok=symmetry <= SYMMETRY_TOL * n,
        pattern_ok=not np.any(off),
    )
