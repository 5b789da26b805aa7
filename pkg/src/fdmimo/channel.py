"""Seeded block-fading channel generation.

Inter-node links are Rayleigh faded, self-interference links Ricean with an
all-ones line-of-sight component.  Channels are block-constant: one draw per
Monte-Carlo trial, reused across all solver iterations.  Every draw is
reproducible from an integer seed; parallel workers derive independent
streams from (master seed, trial index).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import SystemConfig, complex_matrix, db_to_linear


def rng_from_seed(seed) -> np.random.Generator:
    """Deterministic generator: identical seeds give identical sequences."""
    return np.random.default_rng(seed)


def trial_rng(master_seed: int, trial: int, stream: int = 0) -> np.random.Generator:
    """Independent per-trial stream derived from (master seed, trial index).

    ``stream`` separates uses within one trial (0: channels and canceller
    hardware, 1: solver initialization), so sweeps over rates, power caps,
    and precoder modes see the same channel realization per trial index.
    """
    if master_seed < 0 or trial < 0 or stream < 0:
        raise ValueError("seed components must be non-negative")
    return np.random.default_rng([master_seed, trial, stream])


@dataclass(frozen=True)
class ChannelSet:
    """One realization of the four N x M channel matrices.

    ``h_12`` carries node 1's signal to node 2, ``h_21`` the reverse;
    ``h_11`` / ``h_22`` are the self-interference channels.
    """

    h_12: np.ndarray
    h_21: np.ndarray
    h_11: np.ndarray
    h_22: np.ndarray

    def __post_init__(self):
        n, m = np.asarray(self.h_12).shape
        for name in ("h_12", "h_21", "h_11", "h_22"):
            h = complex_matrix(getattr(self, name), n, m)
            object.__setattr__(self, name, h)


def gen_rayleigh(n: int, m: int, pl_db: float, rng: np.random.Generator) -> np.ndarray:
    """Draw an n x m Rayleigh-fading matrix with the given path loss.

    Entries are i.i.d. circularly-symmetric complex Gaussian with zero mean
    and per-entry mean square 10**(-pl_db/10); real and imaginary parts each
    carry half that variance.
    """
    if n < 1 or m < 1:
        raise ValueError("matrix shape must be positive")
    scale = np.sqrt(db_to_linear(-pl_db) / 2.0)
    re = rng.standard_normal((n, m))
    im = rng.standard_normal((n, m))
    return (re + 1j * im) * scale


def gen_ricean(n: int, m: int, pl_db: float, k_db: float,
               rng: np.random.Generator) -> np.ndarray:
    """Draw an n x m Ricean-fading matrix.

    H = sqrt(g) * ( sqrt(k/(k+1)) * H_los + sqrt(1/(k+1)) * H_nlos ) with
    g = 10**(-pl_db/10) and k = 10**(k_db/10).  The line-of-sight component
    is the deterministic all-ones matrix; H_nlos has i.i.d. unit-variance
    circularly-symmetric Gaussian entries.  Per-entry mean square is g.
    """
    if n < 1 or m < 1:
        raise ValueError("matrix shape must be positive")
    g = db_to_linear(-pl_db)
    k = db_to_linear(k_db)
    los = np.sqrt(k / (k + 1.0))
    nlos = np.sqrt(1.0 / (k + 1.0))
    re = rng.standard_normal((n, m))
    im = rng.standard_normal((n, m))
    h_nlos = (re + 1j * im) / np.sqrt(2.0)
    return np.sqrt(g) * (los * np.ones((n, m)) + nlos * h_nlos)


def draw_channel_set(cfg: SystemConfig, rng: np.random.Generator) -> ChannelSet:
    """Draw the four independent channel matrices for one trial.

    Draw order is fixed (h_12, h_21, h_11, h_22) so a given stream always
    produces the same realization.
    """
    h_12 = gen_rayleigh(cfg.N, cfg.M, cfg.pl_link_db, rng)
    h_21 = gen_rayleigh(cfg.N, cfg.M, cfg.pl_link_db, rng)
    h_11 = gen_ricean(cfg.N, cfg.M, cfg.pl_si_db, cfg.k_factor_db, rng)
    h_22 = gen_ricean(cfg.N, cfg.M, cfg.pl_si_db, cfg.k_factor_db, rng)
    return ChannelSet(h_12=h_12, h_21=h_21, h_11=h_11, h_22=h_22)


def dump_channel_set(ch: ChannelSet, path) -> None:
    """Write one trial's channels for cross-implementation checks.

    Four lines (h_12, h_21, h_11, h_22), each holding the matrix entries in
    row-major order as space-separated "re,im" pairs at full precision.
    """
    lines = []
    for h in (ch.h_12, ch.h_21, ch.h_11, ch.h_22):
        lines.append(" ".join(f"{float(v.real)!r},{float(v.imag)!r}"
                              for v in h.ravel()))
    Path(path).write_text("\n".join(lines) + "\n")


def load_channel_set(path, n: int, m: int) -> ChannelSet:
    """Read a channel dump written by :func:`dump_channel_set`."""
    lines = Path(path).read_text().strip().split("\n")
    if len(lines) != 4:
        raise ValueError(f"expected 4 matrix lines in {path}, got {len(lines)}")
    mats = []
    for line in lines:
        vals = [complex(float(p.split(",")[0]), float(p.split(",")[1]))
                for p in line.split()]
        mats.append(complex_matrix(vals, n, m))
    return ChannelSet(*mats)
