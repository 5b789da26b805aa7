"""Closed-form minimum-power solve under per-node SINR targets.

The two SINR constraints form a 2x2 non-negative linear system whose
Perron-Frobenius structure gives both the feasibility condition (spectral
radius of Gamma*M below one) and the componentwise-minimal power vector in
closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DegenerateLinkError, LinkState, SinrTargets
from .channel import ChannelSet

_GAIN_FLOOR = 1e-300


@dataclass(frozen=True)
class PfSystem:
    """Auxiliary matrices of the power-control system.

    gamma: [[0, G2], [G1, 0]] target matrix; m_diag: diagonal matrix of
    SI-to-signal gain ratios; m_vec: inverse signal gains (1/mW-gain).
    """

    gamma: np.ndarray
    m_diag: np.ndarray
    m_vec: np.ndarray


@dataclass(frozen=True)
class PowerSolution:
    """Power-solve outcome: p is None when the targets are infeasible."""

    p: np.ndarray | None
    feasible: bool
    spectral_radius: float


def _link_gains(state: LinkState, ch: ChannelSet, resid_11: np.ndarray,
                resid_22: np.ndarray) -> tuple[float, float, float, float]:
    """Squared scalar gains (signal_1, si_1, signal_2, si_2) of the current
    beamformer pair."""
    s1 = float(np.abs(state.u_1 @ ch.h_21 @ state.v_bar_2) ** 2)
    i1 = float(np.abs(state.u_1 @ resid_11 @ state.v_bar_1) ** 2)
    s2 = float(np.abs(state.u_2 @ ch.h_12 @ state.v_bar_1) ** 2)
    i2 = float(np.abs(state.u_2 @ resid_22 @ state.v_bar_2) ** 2)
    return s1, i1, s2, i2


def build_pf_system(state: LinkState, ch: ChannelSet, resid_11: np.ndarray,
                    resid_22: np.ndarray, targets: SinrTargets) -> PfSystem:
    """Assemble the power-control system for the current beamformers.

    M_kk is the residual-SI-to-signal gain ratio at node k, m the inverse
    signal gains.  Raises when either signal gain vanishes numerically.
    """
    s1, i1, s2, i2 = _link_gains(state, ch, resid_11, resid_22)
    if s1 < _GAIN_FLOOR or s2 < _GAIN_FLOOR:
        raise DegenerateLinkError("vanishing signal gain in the power-control system")
    gamma = np.array([[0.0, targets.gamma_2],
                      [targets.gamma_1, 0.0]])
    m_diag = np.diag([i1 / s1, i2 / s2])
    m_vec = np.array([1.0 / s1, 1.0 / s2])
    return PfSystem(gamma=gamma, m_diag=m_diag, m_vec=m_vec)


def pf_solve(system: PfSystem, sigma2: float) -> PowerSolution:
    """Minimum TX powers meeting both SINR targets, if any exist.

    Feasible iff rho(Gamma*M) < 1; for the zero-diagonal 2x2 system the
    spectral radius is sqrt(G1*G2*M11*M22) exactly.  When feasible,
    p = sigma2 * (I - Gamma*M)^-1 Gamma*m is positive and meets both
    constraints with equality.  Infeasibility is a result, not an error.
    """
    g2, g1 = float(system.gamma[0, 1]), float(system.gamma[1, 0])
    m11, m22 = float(system.m_diag[0, 0]), float(system.m_diag[1, 1])
    rho = float(np.sqrt(g1 * g2 * m11 * m22))
    if not rho < 1.0:
        return PowerSolution(p=None, feasible=False, spectral_radius=rho)
    gm = system.gamma @ system.m_diag
    p = np.linalg.solve(np.eye(2) - gm, sigma2 * (system.gamma @ system.m_vec))
    return PowerSolution(p=p, feasible=True, spectral_radius=rho)


def sinr(state: LinkState, ch: ChannelSet, resid_11: np.ndarray,
         resid_22: np.ndarray, sigma2: float) -> np.ndarray:
    """Linear SINRs of both nodes at the state's powers.

    gamma_1 = P2*|u1 h21 v2|^2 / (P1*|u1 h~11 v1|^2 + sigma2), and
    symmetrically for node 2.
    """
    s1, i1, s2, i2 = _link_gains(state, ch, resid_11, resid_22)
    p1, p2 = float(state.p[0]), float(state.p[1])
    return np.array([p2 * s1 / (p1 * i1 + sigma2),
                     p1 * s2 / (p2 * i2 + sigma2)])
