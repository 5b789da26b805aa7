"""Multi-tap analog cancellation.

The canceller is a sparse copy of the self-interference channel restricted
to a budget of taps, each corrupted by a small multiplicative hardware
error.  Tap placement is greedy on entry magnitude; the hardware error is
drawn once per channel realization because the canceller is analog hardware
that stays fixed while the digital loop runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TapMask:
    """Row/column index pairs occupied by canceller taps.

    Entries are stored in row-major order regardless of how they were
    selected, so iteration order is canonical.
    """

    entries: tuple
    shape: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries",
                           tuple((int(i), int(j)) for i, j in self.entries))
        object.__setattr__(self, "shape", tuple(int(s) for s in self.shape))
        n, m = self.shape
        seen = set()
        for i, j in self.entries:
            if not (0 <= i < n and 0 <= j < m):
                raise ValueError(f"tap ({i},{j}) outside {n}x{m} matrix")
            if (i, j) in seen:
                raise ValueError(f"duplicate tap ({i},{j})")
            seen.add((i, j))

    @property
    def n_tap(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Canceller:
    """Cancellation matrix, zero everywhere except on the tap mask."""

    c: np.ndarray
    mask: TapMask

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.complex128)
        object.__setattr__(self, "c", c)
        if c.shape != self.mask.shape:
            raise ValueError(f"canceller shape {c.shape} != mask shape {self.mask.shape}")
        off = np.ones(c.shape, dtype=bool)
        for i, j in self.mask.entries:
            off[i, j] = False
        if np.any(c[off] != 0):
            raise ValueError("canceller has non-zero entries off the tap mask")


def select_taps(h_si: np.ndarray, n_tap: int) -> TapMask:
    """Place taps on the n_tap largest-magnitude entries of the SI channel.

    Ties are broken toward the earlier row-major index.
    """
    h_si = np.asarray(h_si)
    n, m = h_si.shape
    if not 0 <= n_tap <= n * m:
        raise ValueError(f"n_tap must lie in [0, {n * m}], got {n_tap}")
    flat = np.abs(h_si).ravel()
    order = np.argsort(-flat, kind="stable")[:n_tap]
    pairs = sorted((int(k) // m, int(k) % m) for k in order)
    return TapMask(entries=tuple(pairs), shape=(n, m))


def build_canceller(h_si: np.ndarray, mask: TapMask, amp_imp_db: float,
                    phase_imp_deg: float, rng: np.random.Generator) -> Canceller:
    """Copy the masked SI entries with multiplicative hardware error.

    Each tap gets an independent amplitude factor 10**(a/20) with
    a ~ U[-amp_imp_db, +amp_imp_db] (amplitude dB, 20*log10 convention) and
    a phase rotation exp(1j*theta) with theta ~ U[-phase_imp_deg,
    +phase_imp_deg].  Draws happen in mask (row-major) order: all amplitude
    errors first, then all phase errors.
    """
    h_si = np.asarray(h_si, dtype=np.complex128)
    if h_si.shape != mask.shape:
        raise ValueError(f"SI channel shape {h_si.shape} != mask shape {mask.shape}")
    k = mask.n_tap
    a_db = rng.uniform(-amp_imp_db, amp_imp_db, size=k)
    theta = rng.uniform(-phase_imp_deg, phase_imp_deg, size=k)
    factors = 10.0 ** (a_db / 20.0) * np.exp(1j * np.deg2rad(theta))
    c = np.zeros_like(h_si)
    for (i, j), f in zip(mask.entries, factors):
        c[i, j] = h_si[i, j] * f
    return Canceller(c=c, mask=mask)


def residual_channel(h_si: np.ndarray, canc: Canceller) -> np.ndarray:
    """Self-interference channel left after analog cancellation: h_si - c."""
    h_si = np.asarray(h_si, dtype=np.complex128)
    if h_si.shape != canc.c.shape:
        raise ValueError(f"SI channel shape {h_si.shape} != canceller shape {canc.c.shape}")
    return h_si - canc.c
