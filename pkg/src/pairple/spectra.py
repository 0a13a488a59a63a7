"""Direction-resolved emission intensity and photoluminescence-excitation scans."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .couplings import PairParams, compute_couplings
from .errors import SolverError
from .geometry import K0, GeometryConfig, GeometryDerived, derive_geometry, sin2_beta
from .master_equation import SIGMA_MINUS, SIGMA_PLUS, liouvillian_stack, to_collective
from .steady_state import solve_steady_batch

log = logging.getLogger(__name__)

CENTRAL_EXCLUSION = 0.5  # side peaks closer than this to detuning 0 are ignored
PEAK_REL_THRESHOLD = 1e-6


@dataclass(frozen=True)
class IntensityFactors:
    I11: float
    I22: float
    I12: float
    alpha: float


def intensity_factors(params: PairParams, g: GeometryDerived, omega0_over_gamma1=None) -> IntensityFactors:
    """Scalar intensity weights, normalized so that ``I11 = sin^2(beta)``.

    The detector-distance phase ``(k1 - k2) r`` is included only when both
    ``g.config.r_detector_lambda`` and ``omega0_over_gamma1`` are given.
    """
    s2b = sin2_beta(g)
    alpha = g.phi_12
    r_det = g.config.r_detector_lambda
    if r_det is not None and omega0_over_gamma1 is not None:
        # k1 - k2 = k0 (omega1 - omega2)/omega0 = k0 * 2 delta_omega / omega0
        alpha += K0 * r_det * 2.0 * params.delta_omega / omega0_over_gamma1
    mu = params.mu
    return IntensityFactors(I11=s2b, I22=mu**2 * s2b, I12=mu * s2b, alpha=alpha)


def total_intensity(rho_collective, f: IntensityFactors):
    """Emission intensity from collective-basis density matrices (any leading shape)."""
    r = np.asarray(rho_collective)
    rUU = r[..., 3, 3].real
    rSS = r[..., 1, 1].real
    rAA = r[..., 2, 2].real
    rSA = r[..., 1, 2]
    return (
        0.5 * (f.I11 + f.I22) * (2.0 * rUU + rSS + rAA)
        - 2.0 * f.I12 * np.sin(f.alpha) * rSA.imag
        + f.I12 * np.cos(f.alpha) * (rSS - rAA)
        + (f.I11 - f.I22) * rSA.real
    )


def total_intensity_product(rho, f: IntensityFactors):
    """Same quantity as :func:`total_intensity`, as ``Re sum_ij <s_i^+ s_j> I_ij e^{i phi_ij}``.

    Works directly on product-basis matrices and shares no code with the
    collective-basis formula.
    """
    rho = np.asarray(rho)
    weights = np.array([[f.I11, f.I12 * np.exp(1j * f.alpha)],
                        [f.I12 * np.exp(-1j * f.alpha), f.I22]])
    total = 0.0
    for i in range(2):
        for j in range(2):
            op = SIGMA_PLUS[i] @ SIGMA_MINUS[j]
            expect = np.einsum("ab,...ba->...", op, rho)
            total = total + weights[i, j] * expect
    return np.real(total)


@dataclass(frozen=True)
class Peak:
    position: float
    height: float
    kind: str  # "maximum" or "minimum"


def _vertex(x, y):
    h1, h2 = x[1] - x[0], x[2] - x[1]
    d0 = (y[0] - y[1]) / h1
    d2 = (y[2] - y[1]) / h2
    a = (d0 + d2) / (h1 + h2)
    b = d2 - a * h2
    if a == 0:
        return x[1], y[1]
    off = float(np.clip(-b / (2 * a), -h1, h2))
    return x[1] + off, y[1] + b * off + a * off * off


def find_peaks(detuning, intensity, rel_threshold=PEAK_REL_THRESHOLD):
    """Local maxima and minima refined by a parabola through three points.

    Extrema whose height is below ``rel_threshold`` times the global
    maximum are dropped.
    """
    x = np.asarray(detuning, dtype=float)
    y = np.asarray(intensity, dtype=float)
    if x.size < 3:
        return []
    ymax = y.max()
    if not ymax > 0:
        return []
    cut = rel_threshold * ymax
    mid, left, right = y[1:-1], y[:-2], y[2:]
    is_max = (mid > left) & (mid > right)
    is_min = (mid < left) & (mid < right)
    peaks = []
    for k in np.flatnonzero(is_max | is_min) + 1:
        pos, height = _vertex(x[k - 1:k + 2], y[k - 1:k + 2])
        if height < cut:
            continue
        kind = "maximum" if is_max[k - 1] else "minimum"
        peaks.append(Peak(float(pos), float(height), kind))
    return peaks


@dataclass(frozen=True)
class PleSpectrum:
    detuning: np.ndarray
    intensity: np.ndarray
    peaks: list = field(default_factory=list)
    rho: np.ndarray | None = field(default=None, repr=False)  # product basis, (N, 4, 4)
    omega12: float = float("nan")

    @property
    def maxima(self):
        return [p for p in self.peaks if p.kind == "maximum"]

    @property
    def minima(self):
        return [p for p in self.peaks if p.kind == "minimum"]


def _check_grid(grid):
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("detuning grid must be a non-empty 1-d array")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("detuning grid must be strictly increasing")
    return grid


def ple_scan(base: PairParams, geom: GeometryConfig, grid, *, omega0_over_gamma1=None,
             exchange_sign=1.0, phase_sign=1.0, rel_threshold=PEAK_REL_THRESHOLD) -> PleSpectrum:
    """Steady-state emission intensity versus laser detuning.

    Couplings and drive phases do not depend on the detuning, so the
    generators for the whole grid are built as one stack and solved in a
    single batched call.
    """
    grid = _check_grid(grid)
    g = derive_geometry(geom)
    coup = compute_couplings(base, g, phase_sign)
    Ls = liouvillian_stack(base, coup, grid, exchange_sign)
    rho = solve_steady_batch(Ls, grid)
    f = intensity_factors(base, g, omega0_over_gamma1)
    intensity = total_intensity(to_collective(rho), f)
    peaks = find_peaks(grid, intensity, rel_threshold) if grid.size >= 3 else []
    return PleSpectrum(grid, intensity, peaks, rho, coup.omega12)


def brightest_side_peak(spectrum: PleSpectrum, exclusion=CENTRAL_EXCLUSION):
    """Position of the highest maximum at least ``exclusion`` away from zero, or NaN."""
    side = [p for p in spectrum.maxima if abs(p.position) >= exclusion]
    if not side:
        return float("nan")
    return max(side, key=lambda p: p.height).position


@dataclass(frozen=True)
class PolarizationScan:
    theta: np.ndarray
    detuning: np.ndarray
    intensity: np.ndarray  # (n_theta, n_detuning)
    trail: np.ndarray
    omega12: np.ndarray
    spectra: list = field(repr=False, default_factory=list)


def polarization_scan(base: PairParams, geom: GeometryConfig, theta_grid, detuning_grid,
                      workers: int = 1, **kwargs) -> PolarizationScan:
    """PLE spectra for each polarization angle plus the brightest-side-peak trail.

    With ``workers > 1`` the angles are solved on a thread pool (the batched
    LAPACK calls release the GIL); results keep the order of ``theta_grid``.
    Remaining keyword arguments are forwarded to :func:`ple_scan`.
    """
    theta_grid = np.asarray(theta_grid, dtype=float)
    if theta_grid.ndim != 1 or theta_grid.size == 0:
        raise ValueError("theta grid must be a non-empty 1-d array")

    def one(theta):
        cfg = replace(geom, theta=float(theta))
        try:
            return ple_scan(base, cfg, detuning_grid, **kwargs)
        except SolverError as exc:
            err = type(exc)(f"{exc} at theta={theta:.12g}")
            err.detuning = exc.detuning
            raise err from exc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            spectra = list(pool.map(one, theta_grid))
    else:
        spectra = [one(t) for t in theta_grid]
    return PolarizationScan(
        theta=theta_grid,
        detuning=spectra[0].detuning,
        intensity=np.array([s.intensity for s in spectra]),
        trail=np.array([brightest_side_peak(s) for s in spectra]),
        omega12=np.array([s.omega12 for s in spectra]),
        spectra=spectra,
    )


def side_peak_offset(omega12, delta_omega):
    """Expected distance of the cooperative side resonances from the central one."""
    return np.hypot(omega12, delta_omega)
