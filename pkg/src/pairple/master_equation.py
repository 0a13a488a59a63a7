"""Two-emitter operators, the cooperative Liouvillian and the collective basis.

Product basis ordering is ``|g1 g2>, |g1 e2>, |e1 g2>, |e1 e2>`` (emitter 1
is the left tensor factor).  Density matrices are plain ``(4, 4)`` complex
arrays and are vectorized column-wise, so that ``vec(A rho B) =
kron(B.T, A) @ vec(rho)``.

The generator, in the frame rotating at the laser frequency, is

    d rho/dt = -i [H, rho] + sum_ij gamma_ij (2 s_j rho s_i^+ - s_i^+ s_j rho - rho s_i^+ s_j)

    H = sum_i D_i n_i - sum_i (drive_i s_i + drive_i^* s_i^+)
        + exchange_sign * omega12 (s_1^+ s_2 + s_2^+ s_1)

with ``gamma_ii = gamma_i`` and ``gamma_12 = gamma_21``.  The dissipator
makes single-emitter populations decay at ``2 gamma_i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .couplings import Couplings, PairParams

_SM = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |g><e|
_I2 = np.eye(2, dtype=complex)
_I4 = np.eye(4, dtype=complex)

SIGMA_MINUS = (np.kron(_SM, _I2), np.kron(_I2, _SM))
SIGMA_PLUS = tuple(s.conj().T for s in SIGMA_MINUS)
NUMBER = tuple(sp @ sm for sp, sm in zip(SIGMA_PLUS, SIGMA_MINUS))
EXCHANGE = SIGMA_PLUS[0] @ SIGMA_MINUS[1] + SIGMA_PLUS[1] @ SIGMA_MINUS[0]

_R = 1.0 / np.sqrt(2.0)
# rows: <G|, <S|, <A|, <U| expressed in the product basis
COLLECTIVE_U = np.array([
    [1.0, 0.0, 0.0, 0.0],
    [0.0, _R, _R, 0.0],
    [0.0, -_R, _R, 0.0],
    [0.0, 0.0, 0.0, 1.0],
], dtype=complex)
COLLECTIVE_LABELS = ("G", "S", "A", "U")
PRODUCT_LABELS = ("g1g2", "g1e2", "e1g2", "e1e2")

TRACE_ROW = np.eye(4).reshape(-1)  # vec(I): picks out the diagonal of vec(rho)


def vec(rho):
    rho = np.asarray(rho)
    return np.swapaxes(rho, -1, -2).reshape(rho.shape[:-2] + (16,))


def unvec(v):
    v = np.asarray(v)
    return np.swapaxes(v.reshape(v.shape[:-1] + (4, 4)), -1, -2)


def spre(A):
    return np.kron(_I4, A)


def spost(B):
    return np.kron(B.T, _I4)


def sprepost(A, B):
    return np.kron(B.T, A)


def commutator_super(H):
    return spre(H) - spost(H)


@dataclass(frozen=True, eq=False)
class Liouvillian:
    matrix: np.ndarray
    params: PairParams
    couplings: Couplings
    exchange_sign: float = 1.0

    def __post_init__(self):
        self.matrix.setflags(write=False)


def hamiltonian(params: PairParams, coup: Couplings, exchange_sign: float = 1.0):
    H = params.detuning1 * NUMBER[0] + params.detuning2 * NUMBER[1]
    for drive, sm, sp in zip((coup.drive1, coup.drive2), SIGMA_MINUS, SIGMA_PLUS):
        H = H - (drive * sm + np.conj(drive) * sp)
    return H + exchange_sign * coup.omega12 * EXCHANGE


def dissipator(params: PairParams, coup: Couplings):
    gam = np.array([[params.gamma1, coup.gamma12], [coup.gamma12, params.gamma2]])
    D = np.zeros((16, 16), dtype=complex)
    for i in range(2):
        for j in range(2):
            if gam[i, j] == 0:
                continue
            sp, sm = SIGMA_PLUS[i], SIGMA_MINUS[j]
            D += gam[i, j] * (2.0 * sprepost(sm, sp) - spre(sp @ sm) - spost(sp @ sm))
    return D


def build_liouvillian(params: PairParams, coup: Couplings, exchange_sign: float = 1.0) -> Liouvillian:
    """Assemble the 16x16 generator acting on column-vectorized density matrices.

    ``exchange_sign=-1`` reproduces the ``+i omega12 [s_i^+ s_j, rho]``
    form of the dipole-dipole term; with the default ``+1`` the symmetric
    state is shifted by ``+omega12``.
    """
    H = hamiltonian(params, coup, exchange_sign)
    L = -1j * commutator_super(H) + dissipator(params, coup)
    return Liouvillian(L, params, coup, exchange_sign)


def liouvillian_stack(params: PairParams, coup: Couplings, detunings, exchange_sign: float = 1.0):
    """Generators for every detuning in ``detunings``, shape ``(N, 16, 16)``.

    Only the diagonal energies depend on the detuning, so the stack is
    ``L(0) + detuning * L_n`` with ``L_n = -i [n1 + n2, .]``.
    """
    base = build_liouvillian(params.with_detuning(0.0), coup, exchange_sign).matrix
    L_n = -1j * commutator_super(NUMBER[0] + NUMBER[1])
    detunings = np.asarray(detunings, dtype=float)
    return base[None, :, :] + detunings[:, None, None] * L_n[None, :, :]


def apply_liouvillian(L: Liouvillian, rho) -> np.ndarray:
    return unvec(L.matrix @ vec(rho))


def to_collective(rho) -> np.ndarray:
    return COLLECTIVE_U @ rho @ COLLECTIVE_U.conj().T


def from_collective(rho_c) -> np.ndarray:
    return COLLECTIVE_U.conj().T @ rho_c @ COLLECTIVE_U


def ground_state():
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def check_density_matrix(rho, tol=1e-12, eig_tol=1e-10):
    """Raise ``ValueError`` unless ``rho`` is Hermitian, unit-trace and PSD."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > tol:
        raise ValueError(f"not Hermitian (deviation {herm:.3g})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise ValueError(f"trace {tr} != 1")
    lam = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if lam[0] < -eig_tol:
        raise ValueError(f"negative eigenvalue {lam[0]:.3g}")
    return rho
