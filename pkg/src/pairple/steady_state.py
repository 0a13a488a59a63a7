"""Stationary states of the cooperative Liouvillian.

Two independent routes are provided.  :func:`solve_steady` replaces one
population equation of ``L vec(rho) = 0`` by the trace condition and solves
the resulting 16x16 system directly.  :func:`evolve_to_steady` integrates
``d vec(rho)/dt = L vec(rho)`` with the classical fixed-step RK4 scheme and
serves as an oracle for the former.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSteadyState, NotConverged, SingularSolve
from .master_equation import TRACE_ROW, Liouvillian, ground_state, unvec, vec

log = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-10
HERMITIAN_TOL = 1e-10
# relative size of the second-smallest singular value below which L is
# treated as having a degenerate null space
DEGENERACY_RTOL = 1e-12
CONVERGENCE_TOL = 1e-8


def _matrix(L):
    return L.matrix if isinstance(L, Liouvillian) else np.asarray(L)


def null_space_dimension(L, rtol=DEGENERACY_RTOL) -> int:
    s = np.linalg.svd(_matrix(L), compute_uv=False)
    return int(np.sum(s <= rtol * s[0]))


def solve_steady_batch(Ls, detunings=None) -> np.ndarray:
    """Steady states for a stack of generators, shape ``(N, 4, 4)``.

    ``detunings`` is only used to annotate errors.
    """
    Ls = np.asarray(Ls)
    n = Ls.shape[0]

    def where(k):
        return None if detunings is None else float(detunings[k])

    s = np.linalg.svd(Ls, compute_uv=False)
    degenerate = s[:, -2] <= DEGENERACY_RTOL * s[:, 0]
    if np.any(degenerate):
        k = int(np.argmax(degenerate))
        raise DegenerateSteadyState("stationary state is not unique", where(k))

    A = Ls.copy()
    A[:, 0, :] = TRACE_ROW
    b = np.zeros((n, 16, 1), dtype=complex)
    b[:, 0, 0] = 1.0
    try:
        v = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSolve(f"trace-constrained system is singular: {exc}") from None

    # one step of iterative refinement keeps the residual small for
    # generators with large entries (strong near-field coupling, far detuning)
    v = v - np.linalg.solve(A, A @ v - b)
    v = v[..., 0]

    resid = np.max(np.abs(np.einsum("nij,nj->ni", Ls, v)), axis=1)
    bad = resid > RESIDUAL_TOL
    if np.any(bad):
        k = int(np.argmax(resid))
        raise SingularSolve(f"steady-state residual {resid[k]:.3g} exceeds {RESIDUAL_TOL:g}", where(k))

    rho = unvec(v)
    herm = np.max(np.abs(rho - np.swapaxes(rho.conj(), -1, -2)), axis=(1, 2))
    if np.any(herm > HERMITIAN_TOL):
        k = int(np.argmax(herm))
        raise SingularSolve(f"steady state deviates from Hermiticity by {herm[k]:.3g}", where(k))
    rho = 0.5 * (rho + np.swapaxes(rho.conj(), -1, -2))
    tr = np.trace(rho, axis1=1, axis2=2).real
    rho = rho / tr[:, None, None]
    log.debug("hermitized %d steady states (max deviation %.3g, max trace error %.3g)",
              n, herm.max(), np.max(np.abs(tr - 1.0)))
    return rho


def solve_steady(L) -> np.ndarray:
    """Unique stationary density matrix of ``L`` (a :class:`Liouvillian` or 16x16 array)."""
    return solve_steady_batch(_matrix(L)[None])[0]


def rk4_propagator(L, dt) -> np.ndarray:
    """One classical RK4 step for ``dv/dt = L v`` written as a matrix.

    For a linear right-hand side the four stages collapse to the truncated
    exponential ``1 + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24``.
    """
    hL = dt * _matrix(L)
    P = np.eye(16, dtype=complex)
    term = np.eye(16, dtype=complex)
    for k in range(1, 5):
        term = term @ hL / k
        P = P + term
    return P


def rk4_step(L, v, dt):
    """Explicit four-stage RK4 step; reference for :func:`rk4_propagator`."""
    M = _matrix(L)
    k1 = M @ v
    k2 = M @ (v + 0.5 * dt * k1)
    k3 = M @ (v + 0.5 * dt * k2)
    k4 = M @ (v + dt * k3)
    return v + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def spectral_scale(L) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(_matrix(L)))))


def default_dt(L, dt_max=1e-3) -> float:
    return min(dt_max, 0.01 / spectral_scale(L))


def propagate(L, rho0, t, dt) -> np.ndarray:
    """State after ``round(t/dt)`` RK4 steps of size ``dt`` starting from ``rho0``."""
    steps = int(round(t / dt))
    P = np.linalg.matrix_power(rk4_propagator(L, dt), steps)
    return unvec(P @ vec(rho0))


@dataclass(frozen=True)
class EvolveResult:
    rho: np.ndarray
    change: float  # max-norm of rho(t_max) - rho(t_max/2)
    t_max: float
    dt: float


def evolve_to_steady(L, rho0=None, t_max=200.0, dt=None, auto_extend=True) -> EvolveResult:
    """Integrate from ``rho0`` (default ground state) up to ``t_max``.

    Steps are applied by repeated squaring of the one-step RK4 matrix, which
    is exactly equivalent to stepping ``N`` times.  ``dt`` defaults to
    ``min(1e-3, 0.01/|L|)`` where ``|L|`` is the spectral radius.  If the
    state still changes by more than ``1e-8`` between ``t_max/2`` and
    ``t_max`` the horizon is doubled once (``auto_extend``) before
    :class:`NotConverged` is raised.
    """
    limit = 0.01 / spectral_scale(L)
    if dt is None:
        dt = min(1e-3, limit)
    elif dt > limit * (1 + 1e-12):
        raise ValueError(f"dt={dt:g} exceeds the stability bound 0.01/|L| = {limit:.3g}")
    rho0 = ground_state() if rho0 is None else np.asarray(rho0, dtype=complex)

    half_steps = max(1, math.ceil(0.5 * t_max / dt))
    P_half = np.linalg.matrix_power(rk4_propagator(L, dt), half_steps)
    v_half = P_half @ vec(rho0)
    v_full = P_half @ v_half
    change = float(np.max(np.abs(v_full - v_half)))
    t_end = 2 * half_steps * dt
    if change > CONVERGENCE_TOL:
        if auto_extend:
            log.info("not converged at t=%g (change %.3g); doubling horizon", t_end, change)
            return evolve_to_steady(L, rho0, 2 * t_end, dt, auto_extend=False)
        raise NotConverged(f"state still changing by {change:.3g} at t={t_end:g}")
    return EvolveResult(unvec(v_full), change, t_end, dt)
