"""Excitation/detection geometry for an emitter pair on the z-axis.

Emitter 1 sits at ``+r12/2 z`` and emitter 2 at ``-r12/2 z``.  The laser
wave vector lies in the ZY-plane at polar angle ``xi``; the (collinear)
dipoles and the laser polarization share the polar angle ``theta`` and an
azimuth fixed by transversality, ``n_d . n_k = 0``.  The detector direction
has polar angle ``phi`` and azimuth ``psi``.

Lengths are in units of the resonance wavelength of emitter 1, so the
average wavenumber is ``k0 = 2 pi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError

K0 = 2.0 * np.pi
_ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class GeometryConfig:
    xi: float
    theta: float
    phi: float
    psi: float = np.pi / 2
    r12_lambda: float = 0.08
    r_detector_lambda: float | None = None

    def __post_init__(self):
        if not self.r12_lambda > 0:
            raise GeometryError(f"r12_lambda must be positive, got {self.r12_lambda}")
        for name in ("xi", "theta", "phi"):
            value = getattr(self, name)
            if not -_ANGLE_TOL <= value <= np.pi + _ANGLE_TOL:
                raise GeometryError(f"{name}={value} outside [0, pi]")
        if not np.isfinite(self.psi):
            raise GeometryError(f"psi must be finite, got {self.psi}")
        if self.r_detector_lambda is not None and not self.r_detector_lambda > 0:
            raise GeometryError("r_detector_lambda must be positive when given")
        lo, hi = admissible_theta_range(self.xi)
        if not lo - _ANGLE_TOL <= self.theta <= hi + _ANGLE_TOL:
            raise GeometryError(
                f"theta={self.theta:.6g} outside admissible range "
                f"[{lo:.6g}, {hi:.6g}] for xi={self.xi:.6g}"
            )

    @property
    def k0r12(self) -> float:
        return K0 * self.r12_lambda


@dataclass(frozen=True)
class GeometryDerived:
    n_k: np.ndarray
    n_d: np.ndarray
    n_obs: np.ndarray
    beta: float
    laser_phase_delta: float
    phi_12: float
    config: GeometryConfig = field(repr=False)

    @property
    def theta(self) -> float:
        return self.config.theta

    @property
    def k0r12(self) -> float:
        return self.config.k0r12


def admissible_theta_range(xi):
    """Polar angles of a polarization vector transverse to a wave vector at ``xi``."""
    offset = abs(np.pi / 2 - xi)
    return offset, np.pi - offset


def dipole_direction(xi, theta):
    """Unit dipole vector with polar angle ``theta`` orthogonal to the laser direction.

    The azimuth solves ``sin(theta) sin(az) sin(xi) + cos(theta) cos(xi) = 0``;
    of the two roots the one with ``cos(az) >= 0`` is returned.
    """
    st, ct = np.sin(theta), np.cos(theta)
    sx, cx = np.sin(xi), np.cos(xi)
    if abs(sx) < _ANGLE_TOL:
        # k_L along the pair axis: E_L confined to the XY-plane
        if abs(ct) > _ANGLE_TOL:
            raise GeometryError(f"xi={xi} (k_L along z) requires theta=pi/2, got {theta}")
        return np.array([1.0, 0.0, 0.0])
    if abs(st) < _ANGLE_TOL:
        if abs(cx) > _ANGLE_TOL:
            raise GeometryError(f"theta={theta} is not transverse to k_L at xi={xi}")
        return np.array([0.0, 0.0, np.sign(ct)])
    lo, hi = admissible_theta_range(xi)
    if not lo - _ANGLE_TOL <= theta <= hi + _ANGLE_TOL:
        raise GeometryError(f"theta={theta} outside admissible range for xi={xi}")
    # near grazing incidence the ratio is ill-conditioned; admissibility was
    # checked on the angles themselves, so rounding past +-1 is clipped
    sin_az = -ct * cx / (st * sx)
    sin_az = float(np.clip(sin_az, -1.0, 1.0))
    cos_az = np.sqrt(1.0 - sin_az**2)
    return np.array([st * cos_az, st * sin_az, ct])


def derive_geometry(cfg: GeometryConfig) -> GeometryDerived:
    n_k = np.array([0.0, np.sin(cfg.xi), np.cos(cfg.xi)])
    n_d = dipole_direction(cfg.xi, cfg.theta)
    n_obs = np.array([
        np.sin(cfg.phi) * np.cos(cfg.psi),
        np.sin(cfg.phi) * np.sin(cfg.psi),
        np.cos(cfg.phi),
    ])
    beta = float(np.arccos(np.clip(n_obs @ n_d, -1.0, 1.0)))
    return GeometryDerived(
        n_k=n_k,
        n_d=n_d,
        n_obs=n_obs,
        beta=beta,
        laser_phase_delta=cfg.k0r12 * np.cos(cfg.xi),
        phi_12=cfg.k0r12 * np.cos(cfg.phi),
        config=cfg,
    )


def sin2_beta(g: GeometryDerived) -> float:
    # from the cross product rather than sin(beta)**2: exact zero when n_obs || n_d
    return float(np.clip(np.sum(np.cross(g.n_obs, g.n_d) ** 2), 0.0, 1.0))


def emitter_positions(r12_lambda):
    """Positions of emitters 1 and 2 in wavelength units."""
    half = 0.5 * r12_lambda
    return np.array([0.0, 0.0, half]), np.array([0.0, 0.0, -half])
