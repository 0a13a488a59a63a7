"""Command-line front end: JSON config in, CSV tables (and an optional SVG) out.

Subcommands::

    pairple couplings --config C [--theta-sweep N]
    pairple steady    --config C [--oracle]
    pairple ple       --config C [--svg out.svg]
    pairple polscan   --config C [--workers N]
    pairple selftest

Tables are written to stdout (or ``--output``); multi-table outputs are
separated by a blank line.  Exit codes: 0 success, 1 configuration error,
2 solver error, 3 self-test failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass

import numpy as np

from .couplings import PairParams, compute_couplings, dipole_coupling, gamma_12, omega_12
from .errors import ConfigError, DomainError, GeometryError, SolverError
from .geometry import GeometryConfig, admissible_theta_range, derive_geometry, emitter_positions
from .master_equation import (
    COLLECTIVE_LABELS,
    PRODUCT_LABELS,
    apply_liouvillian,
    build_liouvillian,
    to_collective,
)
from .spectra import (
    intensity_factors,
    ple_scan,
    polarization_scan,
    total_intensity,
    total_intensity_product,
)
from .steady_state import evolve_to_steady, solve_steady

log = logging.getLogger(__name__)

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_SELFTEST = 0, 1, 2, 3

# key -> (default, kind); a default of ... marks a key without default
_KEYS = {
    "gamma1": (1.0, "float"),
    "mu": (1.0, "float"),
    "gamma2": (None, "float"),
    "delta_omega": (0.0, "float"),
    "rabi1": (1.0, "float"),
    "rabi2": (None, "float"),
    "xi": (..., "float"),
    "theta": (..., "float"),
    "phi": (..., "float"),
    "psi": (math.pi / 2, "float"),
    "r12_lambda": (..., "float"),
    "r_detector_lambda": (None, "float"),
    "omega0_over_gamma1": (None, "float"),
    "detuning": (0.0, "float"),
    "detuning_min": (..., "float"),
    "detuning_max": (..., "float"),
    "detuning_steps": (..., "int"),
    "theta_min": (..., "float"),
    "theta_max": (..., "float"),
    "theta_steps": (..., "int"),
    "t_max": (200.0, "float"),
    "dt": (None, "float"),
}
_ALWAYS_REQUIRED = ("xi", "theta", "phi", "r12_lambda")
_REQUIRED = {
    "couplings": _ALWAYS_REQUIRED,
    "steady": _ALWAYS_REQUIRED,
    "ple": _ALWAYS_REQUIRED + ("detuning_min", "detuning_max", "detuning_steps"),
    "polscan": _ALWAYS_REQUIRED + ("detuning_min", "detuning_max", "detuning_steps",
                                   "theta_min", "theta_max", "theta_steps"),
}


@dataclass(frozen=True)
class RunConfig:
    params: PairParams
    geometry: GeometryConfig
    values: dict

    def get(self, key):
        return self.values[key]

    def detuning_grid(self):
        return _grid(self.values, "detuning")

    def theta_grid(self):
        return _grid(self.values, "theta")


def _grid(values, prefix):
    lo, hi, n = values[f"{prefix}_min"], values[f"{prefix}_max"], values[f"{prefix}_steps"]
    if n < 1:
        raise ConfigError(f"{prefix}_steps must be >= 1, got {n}", f"{prefix}_steps")
    if n > 1 and not hi > lo:
        raise ConfigError(f"{prefix}_max must exceed {prefix}_min", f"{prefix}_max")
    return np.linspace(lo, hi, n)


def _coerce(key, value, kind):
    if kind == "int":
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value != int(value):
            raise ConfigError(f"key '{key}' must be an integer, got {value!r}", key)
        return int(value)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"key '{key}' must be a number, got {value!r}", key)
    if not math.isfinite(value):
        raise ConfigError(f"key '{key}' must be finite, got {value!r}", key)
    return float(value)


def parse_config(doc, command: str) -> RunConfig:
    """Validate a decoded JSON document for ``command`` and build the parameter objects."""
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    for key in doc:
        if key not in _KEYS:
            raise ConfigError(f"unknown config key '{key}'", key)
    values = {}
    for key, (default, kind) in _KEYS.items():
        if key in doc and doc[key] is not None:
            values[key] = _coerce(key, doc[key], kind)
        else:
            values[key] = default
    for key in _REQUIRED[command]:
        if values[key] is ...:
            raise ConfigError(f"missing required key '{key}'", key)
    if values["r_detector_lambda"] is not None and values["omega0_over_gamma1"] is None:
        raise ConfigError("r_detector_lambda requires 'omega0_over_gamma1'", "omega0_over_gamma1")
    if values["omega0_over_gamma1"] is not None and not values["omega0_over_gamma1"] > 0:
        raise ConfigError("omega0_over_gamma1 must be positive", "omega0_over_gamma1")
    for key in ("t_max", "dt"):
        if values[key] is not None and not values[key] > 0:
            raise ConfigError(f"{key} must be positive", key)

    try:
        params = PairParams(
            mu=values["mu"], delta_omega=values["delta_omega"], rabi1=values["rabi1"],
            detuning=values["detuning"], gamma1=values["gamma1"], gamma2=values["gamma2"],
            rabi2=values["rabi2"],
        )
    except DomainError as exc:
        raise ConfigError(str(exc), _key_in_message(str(exc))) from None
    try:
        geometry = GeometryConfig(
            xi=values["xi"], theta=values["theta"], phi=values["phi"], psi=values["psi"],
            r12_lambda=values["r12_lambda"], r_detector_lambda=values["r_detector_lambda"],
        )
    except GeometryError as exc:
        raise ConfigError(str(exc), _key_in_message(str(exc))) from None
    return RunConfig(params, geometry, values)


def _key_in_message(msg):
    return next((k for k in _KEYS if msg.startswith(k) or f" {k}" in msg), None)


def load_config(path, command) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    return parse_config(doc, command)


def _fmt(x):
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


class _Tables:
    """Collects CSV sections, separated by blank lines."""

    def __init__(self):
        self.buf = io.StringIO()
        self.sections = 0

    def table(self, header, rows):
        if self.sections:
            self.buf.write("\n")
        w = csv.writer(self.buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
        self.sections += 1

    def text(self):
        return self.buf.getvalue()


def cmd_couplings(cfg: RunConfig, args) -> _Tables:
    x = cfg.geometry.k0r12
    if args.theta_sweep:
        if args.theta_sweep < 2:
            raise ConfigError("--theta-sweep needs at least 2 points")
        lo, hi = admissible_theta_range(cfg.geometry.xi)
        thetas = np.linspace(lo, hi, args.theta_sweep)
    else:
        thetas = [cfg.geometry.theta]
    out = _Tables()
    out.table(["theta", "gamma12", "omega12"],
              [(t, gamma_12(cfg.params, x, t), omega_12(cfg.params, x, t)) for t in thetas])
    return out


def cmd_steady(cfg: RunConfig, args) -> _Tables:
    g = derive_geometry(cfg.geometry)
    L = build_liouvillian(cfg.params, compute_couplings(cfg.params, g))
    rho = solve_steady(L)
    resid = float(np.max(np.abs(apply_liouvillian(L, rho))))
    rho_c = to_collective(rho)
    rows = []
    for basis, labels, m in (("product", PRODUCT_LABELS, rho), ("collective", COLLECTIVE_LABELS, rho_c)):
        for i in range(4):
            for j in range(4):
                rows.append((basis, labels[i], labels[j], m[i, j].real, m[i, j].imag))
    out = _Tables()
    out.table(["basis", "row", "col", "re", "im"], rows)
    f = intensity_factors(cfg.params, g, cfg.get("omega0_over_gamma1"))
    summary = [("detuning", cfg.params.detuning), ("residual", resid),
               ("intensity", float(total_intensity(rho_c, f)))]
    if args.oracle:
        res = evolve_to_steady(L, t_max=cfg.get("t_max"), dt=cfg.get("dt"))
        summary += [("oracle_max_diff", float(np.max(np.abs(res.rho - rho)))),
                    ("oracle_change", res.change), ("oracle_t_max", res.t_max)]
    out.table(["quantity", "value"], summary)
    return out


def cmd_ple(cfg: RunConfig, args) -> _Tables:
    spec = ple_scan(cfg.params, cfg.geometry, cfg.detuning_grid(),
                    omega0_over_gamma1=cfg.get("omega0_over_gamma1"))
    out = _Tables()
    out.table(["detuning", "intensity"], zip(spec.detuning, spec.intensity))
    out.table(["position", "height", "kind"], [(p.position, p.height, p.kind) for p in spec.peaks])
    if args.svg:
        _write_svg(args.svg, spec.detuning, spec.intensity)
    return out


def cmd_polscan(cfg: RunConfig, args) -> _Tables:
    scan = polarization_scan(cfg.params, cfg.geometry, cfg.theta_grid(), cfg.detuning_grid(),
                             workers=args.workers, omega0_over_gamma1=cfg.get("omega0_over_gamma1"))
    out = _Tables()
    out.table(["theta", "detuning", "intensity"],
              ((t, d, scan.intensity[i, j])
               for i, t in enumerate(scan.theta) for j, d in enumerate(scan.detuning)))
    out.table(["theta", "trail", "omega12"], zip(scan.theta, scan.trail, scan.omega12))
    return out


def _write_svg(path, detuning, intensity):
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        raise ConfigError("--svg needs matplotlib (pip install 'artifact[plot]')") from None
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(detuning, intensity, lw=1.2)
    ax.set_xlabel("detuning (gamma_1 units)")
    ax.set_ylabel("intensity (arb. units)")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


# -- self test -----------------------------------------------------------------

def _check_couplings():
    rng = np.random.default_rng(7)
    p = PairParams()
    worst = 0.0
    for _ in range(100):
        x = 10 ** rng.uniform(-2, 2)
        theta = rng.uniform(0, np.pi)
        n_d = np.array([np.sin(theta), 0.0, np.cos(theta)])
        r1, r2 = emitter_positions(x / (2 * np.pi))
        D = dipole_coupling(p, r1 - r2, n_d)
        g, o = gamma_12(p, x, theta), omega_12(p, x, theta)
        worst = max(worst, abs(D.imag - g) / max(1.0, abs(g)), abs(D.real - o) / max(1.0, abs(o)))
    return worst <= 1e-12, f"max rel. deviation {worst:.2e}"


def _side_by_side_liouvillian(detuning=0.0):
    p = PairParams(rabi1=2.0, detuning=detuning)
    g = derive_geometry(GeometryConfig(xi=np.pi / 2, theta=np.pi / 2, phi=np.pi / 2, r12_lambda=0.08))
    return build_liouvillian(p, compute_couplings(p, g)), p, g


def _check_generator():
    L, _, _ = _side_by_side_liouvillian(1.3)
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(100):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = a @ a.conj().T
        rho /= np.trace(rho)
        d = apply_liouvillian(L, rho)
        worst = max(worst, abs(np.trace(d)), np.max(np.abs(d - d.conj().T)))
    return worst <= 1e-12, f"max trace/Hermiticity defect {worst:.2e}"


def _check_steady_vs_rk4():
    L, _, _ = _side_by_side_liouvillian(0.0)
    rho = solve_steady(L)
    res = evolve_to_steady(L)
    diff = float(np.max(np.abs(res.rho - rho)))
    return diff <= 1e-6, f"max |null-space - RK4| {diff:.2e}"


def _check_intensity_routes():
    L, p, g = _side_by_side_liouvillian(-4.0)
    rho = solve_steady(L)
    f = intensity_factors(p, g)
    a, b = float(total_intensity(to_collective(rho), f)), float(total_intensity_product(rho, f))
    return abs(a - b) <= 1e-10, f"collective {a:.10f} vs product {b:.10f}"


def _check_saturation():
    p = PairParams(rabi1=50.0, rabi2=0.0)
    g = derive_geometry(GeometryConfig(xi=np.pi / 2, theta=0.0, phi=np.pi / 2, r12_lambda=50.0))
    coup = compute_couplings(p, g)
    from .couplings import Couplings
    coup = Couplings(0.0, 0.0, coup.drive1, coup.drive2)
    rho = solve_steady(build_liouvillian(p, coup))
    pe = float((rho[2, 2] + rho[3, 3]).real)
    return 0.49 <= pe <= 0.5, f"excited population {pe:.6f}"


SELFTEST_CHECKS = (
    ("closed-form couplings vs Green's tensor", _check_couplings),
    ("trace and Hermiticity preservation", _check_generator),
    ("null-space steady state vs RK4 evolution", _check_steady_vs_rk4),
    ("collective vs product-basis intensity", _check_intensity_routes),
    ("single-emitter saturation", _check_saturation),
)


def cmd_selftest(stream) -> int:
    failed = 0
    for name, fn in SELFTEST_CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}", file=stream)
    print(f"{len(SELFTEST_CHECKS) - failed}/{len(SELFTEST_CHECKS)} checks passed", file=stream)
    return EXIT_OK if failed == 0 else EXIT_SELFTEST


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pairple", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log solver diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_config(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--config", required=True, help="JSON parameter file")
        sp.add_argument("-o", "--output", help="write CSV here instead of stdout")
        return sp

    sp = with_config("couplings", "collective damping and dipole-dipole shift")
    sp.add_argument("--theta-sweep", type=int, metavar="N",
                    help="sweep N polarization angles over the admissible range")
    sp = with_config("steady", "steady-state density matrix at one detuning")
    sp.add_argument("--oracle", action="store_true", help="cross-check against RK4 evolution")
    sp = with_config("ple", "PLE spectrum and peak table")
    sp.add_argument("--svg", help="also write a line plot to this SVG file")
    sp = with_config("polscan", "PLE spectra versus polarization angle")
    sp.add_argument("--workers", type=int, default=1, help="threads for the angle sweep")
    sub.add_parser("selftest", help="run the oracle cross-checks")
    return parser


_COMMANDS = {"couplings": cmd_couplings, "steady": cmd_steady, "ple": cmd_ple, "polscan": cmd_polscan}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "selftest":
        return cmd_selftest(sys.stdout)
    try:
        cfg = load_config(args.config, args.command)
        tables = _COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"pairple: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print(f"pairple: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    text = tables.text()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))
