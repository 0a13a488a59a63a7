"""Collective decay, dipole-dipole shift and laser drive of the emitter pair.

All rates are in units of the decay rate of emitter 1 and lengths in units
of its resonance wavelength.  ``x`` denotes the dimensionless separation
``k0 * r12``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError
from .geometry import K0, GeometryDerived, emitter_positions


@dataclass(frozen=True)
class PairParams:
    """Physical parameters of the emitter pair and the drive.

    ``gamma2`` defaults to ``mu**2 * gamma1`` and ``rabi2`` to ``mu * rabi1``.
    ``delta_omega`` is half the splitting of the transition frequencies and
    ``detuning`` is the mean transition frequency minus the laser frequency.
    """

    mu: float = 1.0
    delta_omega: float = 0.0
    rabi1: float = 1.0
    detuning: float = 0.0
    gamma1: float = 1.0
    gamma2: float | None = None
    rabi2: float | None = None

    def __post_init__(self):
        if not self.gamma1 > 0:
            raise DomainError(f"gamma1 must be positive, got {self.gamma1}")
        if not self.mu > 0:
            raise DomainError(f"mu must be positive, got {self.mu}")
        if self.gamma2 is None:
            object.__setattr__(self, "gamma2", self.mu**2 * self.gamma1)
        elif not self.gamma2 > 0:
            raise DomainError(f"gamma2 must be positive, got {self.gamma2}")
        if self.rabi2 is None:
            object.__setattr__(self, "rabi2", self.mu * self.rabi1)

    @property
    def detuning1(self) -> float:
        return self.detuning + self.delta_omega

    @property
    def detuning2(self) -> float:
        return self.detuning - self.delta_omega

    def with_detuning(self, detuning) -> "PairParams":
        return replace(self, detuning=float(detuning))


@dataclass(frozen=True)
class Couplings:
    gamma12: float
    omega12: float
    drive1: complex
    drive2: complex


# (sin x - x cos x) / x**3 loses digits to cancellation below x ~ 1; there the
# Taylor series sum_{m>=1} (-1)**(m+1) 2m x**(2m-2) / (2m+1)! is used instead.
_SERIES_COEFFS = np.array(
    [(-1) ** (m + 1) * 2 * m / math.factorial(2 * m + 1) for m in range(1, 14)]
)


def _j1_over_x(x):
    if x < 1.0:
        return float(np.polynomial.polynomial.polyval(x * x, _SERIES_COEFFS))
    return (math.sin(x) - x * math.cos(x)) / x**3


def _check_x(x):
    if not x > 0:
        raise DomainError(f"k0*r12 must be positive, got {x}")


def gamma_12(params: PairParams, x: float, theta: float) -> float:
    """Collective damping rate for collinear dipoles at angle ``theta`` to the pair axis.

    Algebraically identical to
    ``1.5 sqrt(g1 g2)/x * (cos x (1 - 3c^2)/x + sin x (1 - c^2 + (3c^2 - 1)/x^2))``
    with ``c = cos(theta)``, regrouped so that the small-``x`` cancellation
    is handled by a series.
    """
    _check_x(x)
    s2, c2 = math.sin(theta) ** 2, math.cos(theta) ** 2
    pref = 1.5 * math.sqrt(params.gamma1 * params.gamma2)
    return pref * (s2 * math.sin(x) / x + (3.0 * c2 - 1.0) * _j1_over_x(x))


def omega_12(params: PairParams, x: float, theta: float) -> float:
    """Dipole-dipole interaction parameter; diverges as ``x**-3`` in the near field."""
    _check_x(x)
    s2, c2 = math.sin(theta) ** 2, math.cos(theta) ** 2
    pref = 1.5 * math.sqrt(params.gamma1 * params.gamma2)
    cx, sx = math.cos(x), math.sin(x)
    return pref * (s2 * cx / x + (3.0 * c2 - 1.0) * (cx + x * sx) / x**3)


def green_tensor(r_vec, k: float = K0) -> np.ndarray:
    """Free-space dyadic Green's tensor ``k^2 e^{ikr}/r (P(ikr) I + Q(ikr) n n)``.

    ``r_vec`` is in wavelength units and ``k`` in inverse wavelength units.
    Evaluated in extended precision because the imaginary part cancels
    strongly in the near field.
    """
    r_vec = np.asarray(r_vec, dtype=np.longdouble)
    r = np.sqrt(np.sum(r_vec**2))
    if not r > 0:
        raise DomainError("Green's tensor is singular at r = 0")
    n = r_vec / r
    k = np.longdouble(k)
    z = np.clongdouble(1j) * k * r
    P = 1 - 1 / z + 1 / z**2
    Q = -1 + 3 / z - 3 / z**2
    G = k**2 * np.exp(z) / r * (P * np.eye(3, dtype=np.longdouble) + Q * np.outer(n, n))
    return G.astype(np.complex128)


def dipole_coupling(params: PairParams, r_vec, n_d, k: float = K0) -> complex:
    """Complex ``D12 = d1 . G(r12) . d2`` in units of ``gamma1``.

    Uses ``d_i**2 k**3 = 1.5 gamma_i``; the imaginary part is the collective
    damping rate and the real part the dipole-dipole interaction parameter.
    """
    n_d = np.asarray(n_d, dtype=float)
    G = green_tensor(r_vec, k)
    scale = 1.5 * math.sqrt(params.gamma1 * params.gamma2) / k**3
    return complex(scale * (n_d @ G @ n_d))


def drive_amplitudes(params: PairParams, g: GeometryDerived, phase_sign: float = 1.0):
    """Position-dependent Rabi amplitudes ``rabi_i * exp(i s k_L . r_i)``.

    ``phase_sign=-1`` gives the ``exp(-i k_L . r_i)`` form; the default
    ``+1`` is the convention under which the symmetric resonance of a
    side-by-side pair sits at ``detuning = -omega12`` together with the
    default exchange sign of :func:`pairple.master_equation.build_liouvillian`.
    """
    r1, r2 = emitter_positions(g.config.r12_lambda)
    k_L = K0 * g.n_k
    drive1 = params.rabi1 * np.exp(1j * phase_sign * (k_L @ r1))
    drive2 = params.rabi2 * np.exp(1j * phase_sign * (k_L @ r2))
    return complex(drive1), complex(drive2)


def compute_couplings(params: PairParams, g: GeometryDerived, phase_sign: float = 1.0) -> Couplings:
    x = g.k0r12
    d1, d2 = drive_amplitudes(params, g, phase_sign)
    return Couplings(
        gamma12=gamma_12(params, x, g.theta),
        omega12=omega_12(params, x, g.theta),
        drive1=d1,
        drive2=d2,
    )


def omega12_root(params: PairParams, x: float) -> float:
    """Polarization angle in ``(0, pi/2)`` at which the dipole-dipole shift vanishes."""
    from scipy.optimize import brentq

    lo, hi = 1e-9, np.pi / 2
    f_lo, f_hi = omega_12(params, x, lo), omega_12(params, x, hi)
    if f_lo * f_hi > 0:
        raise DomainError(f"omega12 does not change sign on (0, pi/2] at x={x}")
    return brentq(lambda t: omega_12(params, x, t), lo, hi, xtol=1e-14, rtol=1e-14)
