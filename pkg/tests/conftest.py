"""Shared test helpers: random problem builders and independent oracles.

The oracles here deliberately avoid the implementation's code paths:
the generalized eigenpair comes from power iteration on w^-1 q, and the
minimum-power vector from the monotone fixed-point iteration.
"""

import numpy as np
import pytest


def crandn(rng, *shape):
    """Circularly-symmetric complex normal array, unit entry variance."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def rand_unit(rng, n):
    """Random unit-norm complex vector."""
    v = crandn(rng, n)
    return v / np.linalg.norm(v)


def rq_value(u, q, w):
    """Generalized Rayleigh quotient of a row covector u."""
    num = np.real(u @ q @ u.conj())
    den = np.real(u @ w @ u.conj())
    return num / den


def power_iteration_gev(q, w, tol=1e-12, max_iter=10_000):
    """Dominant eigenpair of w^-1 q by plain power iteration.

    Independent oracle for the generalized eigensolver: one LU solve to
    form b = w^-1 q, then normalized iterates until the direction moves by
    less than tol in 2-norm.
    """
    b = np.linalg.solve(w, q)
    n = b.shape[0]
    x = np.ones(n, dtype=complex) / np.sqrt(n)
    for _ in range(max_iter):
        y = b @ x
        ny = np.linalg.norm(y)
        if ny == 0.0:
            raise RuntimeError("power iteration hit the zero vector")
        y = y / ny
        # remove the phase drift so the convergence check sees direction only
        phase = np.vdot(x, y)
        if abs(phase) > 0:
            y = y * (phase.conjugate() / abs(phase))
        if np.linalg.norm(y - x) < tol:
            x = y
            break
        x = y
    else:
        raise RuntimeError("power iteration did not converge")
    lam = np.real(np.vdot(x, b @ x))
    return x, lam


def fixed_point_powers(gamma, m_diag, m_vec, sigma2, tol=1e-12,
                       max_iter=200_000, blow_up=1e15):
    """Iterate p <- gamma*m_diag p + sigma2*gamma*m_vec from zero.

    Converges to the minimum power vector exactly when the spectral radius
    of gamma*m_diag is below one; diverges otherwise.  Stops on a
    componentwise relative step below tol.  Returns (p, True) on
    convergence and (None, False) on divergence or iteration exhaustion.
    """
    gm = gamma @ m_diag
    c = sigma2 * (gamma @ m_vec)
    ref = max(np.linalg.norm(c), 1e-300)
    p = np.zeros_like(c)
    for _ in range(max_iter):
        p_new = gm @ p + c
        step = np.max(np.abs(p_new - p) / np.maximum(np.abs(p_new), 1e-300))
        if step <= tol:
            return p_new, True
        if np.linalg.norm(p_new) > blow_up * ref:
            return None, False
        p = p_new
    return None, False


@pytest.fixture
def rng():
    return np.random.default_rng(20240801)
