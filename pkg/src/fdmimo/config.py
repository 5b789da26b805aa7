"""Scenario constants, unit conversions, and shared state containers.

Linear units are used internally everywhere: powers in mW, channel gains as
dimensionless amplitude ratios.  dB / dBm appear only at the configuration
and reporting boundaries.  All containers are immutable after construction
and safe to share across parallel Monte-Carlo workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Transmit-precoder update rules understood by the solver.
TX_MODES = ("mrt", "zf_rq", "rq_rq")

#: dBm value reported in place of an exactly-zero linear power.
ZERO_POWER_DBM = -400.0


class DegenerateLinkError(RuntimeError):
    """A beamformer direction or link gain collapsed below numerical resolution."""


def dbm_to_mw(x: float) -> float:
    """Convert dBm to linear milliwatt: 10**(x/10)."""
    with np.errstate(over="ignore"):
        return float(np.power(10.0, np.float64(x) / 10.0))


def mw_to_dbm(x: float) -> float:
    """Convert linear milliwatt to dBm (returns -inf for zero power)."""
    with np.errstate(divide="ignore"):
        return float(10.0 * np.log10(np.float64(x)))


def db_to_linear(x: float) -> float:
    """Convert a dB gain to a linear power ratio: 10**(x/10)."""
    with np.errstate(over="ignore"):
        return float(np.power(10.0, np.float64(x) / 10.0))


def linear_to_db(x: float) -> float:
    """Convert a linear power ratio to dB (returns -inf for zero)."""
    with np.errstate(divide="ignore"):
        return float(10.0 * np.log10(np.float64(x)))


def complex_matrix(entries, rows: int, cols: int) -> np.ndarray:
    """Validated dense complex matrix with an explicit shape contract.

    Rejects non-positive dimensions, entry counts that do not match
    rows*cols, and non-finite entries.  Returns a fresh complex128 array.
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"matrix shape must be positive, got {rows}x{cols}")
    a = np.asarray(entries, dtype=np.complex128)
    if a.size != rows * cols:
        raise ValueError(
            f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {a.size}"
        )
    a = a.reshape(rows, cols).copy()
    if not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite")
    return a


@dataclass(frozen=True)
class SystemConfig:
    """Scenario constants for one simulated link.

    Defaults are the desk-scale 4x4 setup used throughout the bundled
    experiments.
    """

    M: int = 4                       # TX antennas per node
    N: int = 4                       # RX antennas per node
    n_tap: int = 8                   # non-zero analog canceller taps (<= M*N)
    noise_floor_dbm: float = -110.0  # thermal noise power
    p_max_dbm: float = 30.0          # per-node TX power cap
    pl_link_db: float = 110.0        # inter-node path loss
    pl_si_db: float = 40.0           # self-interference path loss
    k_factor_db: float = 35.0        # Ricean K-factor of the SI channels
    amp_imp_db: float = 0.01         # canceller amplitude error half-range
    phase_imp_deg: float = 0.065     # canceller phase error half-range
    max_iter: int = 100              # alternating-loop iteration cap
    conv_tol: float = 1e-6           # relative power-change stop threshold

    def __post_init__(self):
        if self.M < 1 or self.N < 1:
            raise ValueError("antenna counts must be >= 1")
        if not 0 <= self.n_tap <= self.M * self.N:
            raise ValueError("n_tap must lie in [0, M*N]")
        for name in ("noise_floor_dbm", "p_max_dbm", "pl_link_db", "pl_si_db",
                     "k_factor_db", "amp_imp_db", "phase_imp_deg"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.conv_tol <= 0:
            raise ValueError("conv_tol must be positive")

    @property
    def sigma2_mw(self) -> float:
        """Noise power in mW."""
        return dbm_to_mw(self.noise_floor_dbm)

    @property
    def p_max_mw(self) -> float:
        """Per-node power cap in mW."""
        return dbm_to_mw(self.p_max_dbm)


@dataclass(frozen=True)
class SinrTargets:
    """Per-node linear SINR targets."""

    gamma_1: float
    gamma_2: float

    def __post_init__(self):
        if not (self.gamma_1 > 0 and self.gamma_2 > 0):
            raise ValueError("SINR targets must be positive")

    @classmethod
    def from_rate(cls, rate_bps_hz: float, rate_2: float | None = None) -> "SinrTargets":
        """Targets from spectral-efficiency goals: gamma = 2**rate - 1."""
        r2 = rate_bps_hz if rate_2 is None else rate_2
        return cls(2.0 ** rate_bps_hz - 1.0, 2.0 ** r2 - 1.0)


@dataclass(frozen=True)
class LinkState:
    """Beamformers and TX powers for one link configuration.

    Precoders ``v_bar_k`` are unit-norm column vectors (length M); combiners
    ``u_k`` are unit-norm row covectors (length N) applied without extra
    conjugation, so a combined scalar gain reads ``u @ H @ v``.  Powers are
    per-node TX powers in mW.
    """

    v_bar_1: np.ndarray
    v_bar_2: np.ndarray
    u_1: np.ndarray
    u_2: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        for name in ("v_bar_1", "v_bar_2", "u_1", "u_2"):
            v = np.asarray(getattr(self, name), dtype=np.complex128).ravel()
            object.__setattr__(self, name, v)
            if abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ValueError(f"{name} must have unit norm")
        object.__setattr__(self, "p", np.asarray(self.p, dtype=np.float64).ravel())
