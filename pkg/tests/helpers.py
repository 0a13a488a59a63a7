"""Shared fixtures-by-function for the test modules."""

import numpy as np

from pairple import Couplings, GeometryConfig, PairParams, build_liouvillian, compute_couplings, derive_geometry

HALF = np.pi / 2


def side_geometry(**kw):
    base = dict(xi=HALF, theta=HALF, phi=HALF, r12_lambda=0.08)
    base.update(kw)
    return GeometryConfig(**base)


def random_state(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng):
    """Hermitian, unit trace, entries of order one; not necessarily positive."""
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = 0.25 * (a + a.conj().T)
    return h + (1 - np.trace(h).real) / 4 * np.eye(4)


def random_setup(rng, log_r=(np.log(0.04), np.log(2.0)), rabi=(0.1, 10.0),
                 detuning=(-50.0, 50.0), delta_omega=(0.0, 25.0)):
    """Random pair parameters and geometry within the sampling box used for the solver oracle."""
    r12 = float(np.exp(rng.uniform(*log_r)))
    xi = float(rng.uniform(0.2, np.pi - 0.2))
    lo = abs(HALF - xi)
    theta = float(rng.uniform(lo, np.pi - lo))
    geom = GeometryConfig(xi=xi, theta=theta, phi=float(rng.uniform(0, np.pi)),
                          psi=float(rng.uniform(0, 2 * np.pi)), r12_lambda=r12)
    params = PairParams(
        mu=float(rng.uniform(0.6, 1.6)),
        rabi1=float(np.exp(rng.uniform(np.log(rabi[0]), np.log(rabi[1])))),
        detuning=float(rng.uniform(*detuning)),
        delta_omega=float(rng.uniform(*delta_omega)),
    )
    return params, geom


def liouvillian_for(params, geom, **kw):
    g = derive_geometry(geom)
    return build_liouvillian(params, compute_couplings(params, g), **kw)


def decoupled(coup):
    return Couplings(0.0, 0.0, coup.drive1, coup.drive2)
