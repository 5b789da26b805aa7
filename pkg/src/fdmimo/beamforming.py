"""Closed-form transmit precoders and receive combiners.

Maximum-ratio transmission, the generalized Rayleigh-quotient combiner, and
the two baseline precoders (scalar-nulling ZF and a TX-side Rayleigh
quotient).

Conventions: precoders are unit column vectors v (length M); combiners are
unit row covectors u (length N) applied without extra conjugation, so the
combined scalar gain is ``u @ H @ v``.  Every returned vector has its global
phase fixed by making the first component with magnitude above 1e-12
real-positive, for bit-reproducible outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from .config import DegenerateLinkError

_PHASE_TOL = 1e-12
_ZERO_NORM = 1e-300


def _unit_phase_fixed(v: np.ndarray) -> np.ndarray:
    """Normalize to unit norm and rotate the global phase to the convention."""
    v = np.asarray(v, dtype=np.complex128).ravel()
    n = np.linalg.norm(v)
    if n < _ZERO_NORM:
        raise DegenerateLinkError("cannot normalize a numerically zero vector")
    v = v / n
    idx = np.flatnonzero(np.abs(v) > _PHASE_TOL)
    if idx.size:
        ref = v[idx[0]]
        v = v * (ref.conjugate() / abs(ref))
    return v


def mrt_precoder(h_kl: np.ndarray, u_l: np.ndarray) -> np.ndarray:
    """Maximum-ratio precoder toward the peer's combined channel.

    Returns the unit vector along h_kl^H u_l^H, which maximizes
    |u_l @ h_kl @ v| over unit-norm v.
    """
    d = h_kl.conj().T @ np.conj(u_l)
    if np.linalg.norm(d) < _ZERO_NORM:
        raise DegenerateLinkError("zero effective channel: h^H u vanishes")
    return _unit_phase_fixed(d)


@dataclass(frozen=True)
class RqProblem:
    """Quadratic forms of a combiner Rayleigh quotient.

    The optimal combiner maximizes (u q u^H) / (u w u^H) over unit
    covectors u; q is Hermitian PSD (signal), w Hermitian PD
    (interference plus noise, smallest eigenvalue >= noise power).

    When the rank-one factors are known (q = b b^H, w = c c^H + sigma2 I)
    they ride along so the combiner can use the exact one-solve closed form,
    which stays accurate when the interference dyad dwarfs the noise floor.
    """

    q: np.ndarray
    w: np.ndarray
    sig_vec: np.ndarray | None = None
    si_vec: np.ndarray | None = None
    sigma2: float | None = None


def build_rq_problem(h_lk: np.ndarray, v_l: np.ndarray, h_tilde_kk: np.ndarray,
                     v_k: np.ndarray, sigma2: float) -> RqProblem:
    """Signal and interference-plus-noise forms seen by node k's combiner.

    The precoder arguments carry their TX power folded in
    (v = sqrt(P) * v_bar): q = (h_lk v_l)(h_lk v_l)^H from the intended
    link, w = (h~_kk v_k)(h~_kk v_k)^H + sigma2 * I from the residual SI
    link plus the noise floor.
    """
    b = h_lk @ v_l
    c = h_tilde_kk @ v_k
    q = np.outer(b, b.conj())
    w = np.outer(c, c.conj()) + sigma2 * np.eye(b.size)
    return RqProblem(q=q, w=w, sig_vec=b, si_vec=c, sigma2=sigma2)


def _dyad_solve_direction(b: np.ndarray, c: np.ndarray, sigma2: float) -> np.ndarray:
    """Direction of (c c^H + sigma2 I)^-1 b via the matrix-inversion lemma."""
    return b - c * (np.vdot(c, b) / (sigma2 + np.vdot(c, c).real))


def rq_combiner(prob: RqProblem) -> np.ndarray:
    """Covector maximizing the generalized Rayleigh quotient of (q, w).

    The dominant generalized eigenvector of the pair, i.e. the dominant
    eigenvector of w^-1 q, conjugated into covector form and phase-fixed.
    With rank-one factors present this is the exact closed form
    u ∝ (w^-1 b)^H; otherwise the general Hermitian eigensolver runs.
    """
    if prob.sig_vec is not None and prob.si_vec is not None and prob.sigma2 is not None:
        x = _dyad_solve_direction(prob.sig_vec, prob.si_vec, prob.sigma2)
    else:
        vals, vecs = sla.eigh(prob.q, prob.w, check_finite=False)
        x = vecs[:, -1]
    return _unit_phase_fixed(np.conj(x))


def zf_rq_precoder(h_kl: np.ndarray, u_l: np.ndarray, h_tilde_kk: np.ndarray,
                   u_k: np.ndarray) -> np.ndarray:
    """MRT direction projected off the combiner-side residual SI row.

    Nulls the effective self-interference scalar: with
    a = (u_k @ h_tilde_kk)^H, the returned unit vector v satisfies
    |u_k @ h_tilde_kk @ v| <= 1e-10.  Falls back to plain MRT when the SI
    row vanishes.  Raises when the MRT direction is numerically parallel
    to the SI row (relative residual below 1e-12).
    """
    d = h_kl.conj().T @ np.conj(u_l)
    nd = np.linalg.norm(d)
    if nd < _ZERO_NORM:
        raise DegenerateLinkError("zero effective channel: h^H u vanishes")
    a = np.conj(u_k @ h_tilde_kk)
    na = np.linalg.norm(a)
    if na < _ZERO_NORM:
        return _unit_phase_fixed(d)
    a_hat = a / na
    perp = d - a_hat * np.vdot(a_hat, d)
    perp = perp - a_hat * np.vdot(a_hat, perp)  # second pass keeps the null exact
    if np.linalg.norm(perp) < 1e-12 * nd:
        raise DegenerateLinkError("MRT direction parallel to the SI row")
    return _unit_phase_fixed(perp)


def rq_rq_precoder(h_kl: np.ndarray, u_l: np.ndarray, h_tilde_kk: np.ndarray,
                   u_k: np.ndarray, sigma2: float) -> np.ndarray:
    """TX-side Rayleigh-quotient precoder.

    Dominant generalized eigenvector of the intended-gain form
    h_kl^H u_l^H u_l h_kl against the SI-plus-noise form
    h~_kk^H u_k^H u_k h~_kk + sigma2 * I.  Both forms are rank-one dyads,
    so the eigenvector is the exact closed form v ∝ w^-1 d.
    """
    d = h_kl.conj().T @ np.conj(u_l)
    a = h_tilde_kk.conj().T @ np.conj(u_k)
    return _unit_phase_fixed(_dyad_solve_direction(d, a, sigma2))
