"""Command-line frontend.

Subcommands: profile (displacement curves to CSV + figure), point (one
radius to stdout), sweep (origin settlement versus Poisson ratio with the
linear fit), verify (transform-domain certification report), and convolve
(settlement under a uniform disc load).

Configuration precedence is flags > config file (JSON) > environment
(GRADBOUSS_REL_TOL for the default quadrature relative tolerance) >
built-in defaults.  Every run prints its fully resolved configuration, and
identical configurations produce byte-identical CSV files and reports.
Exit codes: 0 success, 2 invalid input, 3 quadrature failure,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import superpose, surface, transform
from .model import Material, PointLoad
from .quadrature import QuadratureError, QuadratureSpec

__all__ = ["main", "RunConfig"]

PROFILE_HEADER = ("r_prime,u3_hat,ur_hat,u3_classical_hat,ur_classical_hat,"
                  "quad_err_u3,quad_err_ur")

_COMMON_KEYS = ("mu", "nu", "c", "load", "rel_tol", "abs_tol", "max_zero_intervals",
                "output", "figure", "no_figure")
_COMMAND_KEYS = {
    "profile": _COMMON_KEYS + ("r_max", "n_points"),
    "point": _COMMON_KEYS + ("r_prime",),
    "sweep": _COMMON_KEYS,
    "verify": _COMMON_KEYS + ("samples", "seed", "tol", "perturb_coefficients", "csv"),
    "convolve": _COMMON_KEYS + ("shape", "radius", "pressure", "eval_max", "n_eval"),
}

_DEFAULTS = {
    "mu": 1.0,
    "nu": 0.3,
    "c": 1.0,
    "load": 1.0,
    "rel_tol": 1e-9,
    "abs_tol": 1e-12,
    "max_zero_intervals": 200,
    "output": None,
    "figure": None,
    "no_figure": False,
    "r_max": 20.0,
    "n_points": 200,
    "r_prime": 1.0,
    "samples": 100,
    "seed": 12345,
    "tol": 1e-10,
    "perturb_coefficients": 0.0,
    "csv": None,
    "shape": "disc",
    "radius": 1.0,
    "pressure": 1.0,
    "eval_max": None,
    "n_eval": 40,
}

_DEFAULT_OUTPUT = {"profile": "profile.csv", "sweep": "sweep.csv", "convolve": "convolve.csv"}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run configuration for one CLI invocation."""

    command: str
    values: dict

    def __getattr__(self, name):
        try:
            return self.values[name]
        except KeyError:
            raise AttributeError(name) from None

    def material(self) -> Material:
        return Material(mu=self.values["mu"], nu=self.values["nu"], c=self.values["c"])

    def point_load(self) -> PointLoad:
        return PointLoad(self.values["load"])

    def quad_spec(self) -> QuadratureSpec:
        return QuadratureSpec(rel_tol=self.values["rel_tol"],
                              abs_tol=self.values["abs_tol"],
                              max_zero_intervals=self.values["max_zero_intervals"])


def _fmt(value) -> str:
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return str(value)
    return f"{value:.12g}"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradbouss",
        description="Surface displacements of a gradient-elastic half space "
                    "under a normal point load, plus distributed-load settlement.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", type=str, default=None,
                        help="JSON file with configuration values")
        sp.add_argument("--mu", type=float, default=None, help="shear modulus")
        sp.add_argument("--nu", type=float, default=None, help="Poisson ratio")
        sp.add_argument("--c", type=float, default=None, help="gradient coefficient, length^2")
        sp.add_argument("--load", type=float, default=None, help="point load magnitude")
        sp.add_argument("--rel-tol", type=float, default=None, help="quadrature relative tolerance")
        sp.add_argument("--abs-tol", type=float, default=None, help="quadrature absolute tolerance")
        sp.add_argument("--max-zero-intervals", type=int, default=None,
                        help="budget of Bessel-zero subintervals per integral")
        sp.add_argument("--output", "-o", type=str, default=None, help="output CSV path")
        sp.add_argument("--figure", type=str, default=None, help="figure path (PNG)")
        sp.add_argument("--no-figure", action="store_const", const=True, default=None,
                        help="skip figure rendering")

    sp = sub.add_parser("profile", help="displacement profile over a radius grid")
    add_common(sp)
    sp.add_argument("--r-max", type=float, default=None, help="largest normalized radius")
    sp.add_argument("--n-points", type=int, default=None,
                    help="log-spaced grid points (the origin is added)")

    sp = sub.add_parser("point", help="displacements at one normalized radius (stdout)")
    add_common(sp)
    sp.add_argument("--r-prime", type=float, default=None, help="normalized radius")

    sp = sub.add_parser("sweep", help="origin settlement versus Poisson ratio")
    add_common(sp)

    sp = sub.add_parser("verify", help="transform-domain certification report")
    add_common(sp)
    sp.add_argument("--samples", type=int, default=None, help="number of random samples")
    sp.add_argument("--seed", type=int, default=None, help="sampling seed")
    sp.add_argument("--tol", type=float, default=None, help="residual threshold")
    sp.add_argument("--perturb-coefficients", type=float, default=None,
                    help="test hook: relative perturbation of a solution coefficient")
    sp.add_argument("--csv", type=str, default=None, help="write per-sample residuals to CSV")

    sp = sub.add_parser("convolve", help="settlement under a distributed axisymmetric load")
    add_common(sp)
    sp.add_argument("--shape", type=str, default=None, choices=["disc"], help="load shape")
    sp.add_argument("--radius", type=float, default=None, help="loaded disc radius")
    sp.add_argument("--pressure", type=float, default=None, help="uniform pressure value")
    sp.add_argument("--eval-max", type=float, default=None,
                    help="largest evaluation radius (default 3x disc radius)")
    sp.add_argument("--n-eval", type=int, default=None, help="number of evaluation radii")
    return parser


def _resolve(args: argparse.Namespace) -> RunConfig:
    command = args.command
    allowed = _COMMAND_KEYS[command]
    values = {key: _DEFAULTS[key] for key in allowed}
    env_rel = os.environ.get("GRADBOUSS_REL_TOL")
    if env_rel is not None:
        try:
            values["rel_tol"] = float(env_rel)
        except ValueError:
            raise ValueError(f"GRADBOUSS_REL_TOL is not a number: {env_rel!r}") from None
    if args.config is not None:
        try:
            file_values = json.loads(Path(args.config).read_text())
        except OSError as exc:
            raise ValueError(f"cannot read config file: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file is not valid JSON: {exc}") from None
        if not isinstance(file_values, dict):
            raise ValueError("config file must hold a JSON object")
        for key, val in file_values.items():
            if key not in allowed:
                raise ValueError(f"config key {key!r} is not valid for command {command!r}")
            values[key] = val
    for key in allowed:
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            values[key] = flag_val
    if values.get("output") is None:
        values["output"] = _DEFAULT_OUTPUT.get(command)
    if values.get("no_figure") is None:
        values["no_figure"] = False
    cfg = RunConfig(command=command, values=values)
    cfg.material()      # validates mu, nu, c
    cfg.point_load()
    cfg.quad_spec()
    return cfg


def _echo_config(cfg: RunConfig) -> None:
    print(f"config: command = {cfg.command}")
    for key in sorted(cfg.values):
        print(f"config: {key} = {_fmt(cfg.values[key])}")


def _figure_path(cfg: RunConfig) -> str | None:
    if cfg.values["no_figure"]:
        return None
    if cfg.values["figure"] is not None:
        return cfg.values["figure"]
    out = cfg.values["output"]
    return str(Path(out).with_suffix(".png")) if out else None


def _profile_rows(prof: surface.SurfaceProfile, with_converged: bool):
    lines = []
    for i, r in enumerate(prof.r_prime):
        u3c = "" if not np.isfinite(prof.u3_classical_hat[i]) else f"{prof.u3_classical_hat[i]:.12g}"
        urc = "" if not np.isfinite(prof.ur_classical_hat[i]) else f"{prof.ur_classical_hat[i]:.12g}"
        row = (f"{r:.12g},{prof.u3_hat[i]:.12g},{prof.ur_hat[i]:.12g},{u3c},{urc},"
               f"{prof.u3_quad[i].err_est:.12g},{prof.ur_quad[i].err_est:.12g}")
        if with_converged:
            flag = prof.u3_quad[i].converged and prof.ur_quad[i].converged
            row += f",{str(flag).lower()}"
        lines.append(row)
    return lines


def _run_profile(cfg: RunConfig) -> int:
    prof = surface.surface_profile(cfg.values["nu"], cfg.quad_spec(),
                                   r_max=cfg.values["r_max"],
                                   n_points=cfg.values["n_points"])
    ok = prof.all_converged
    header = PROFILE_HEADER if ok else PROFILE_HEADER + ",converged"
    text = "\n".join([header] + _profile_rows(prof, with_converged=not ok)) + "\n"
    Path(cfg.values["output"]).write_text(text)
    print(f"wrote {cfg.values['output']} ({len(prof.r_prime)} points)")
    fig = _figure_path(cfg)
    if fig:
        from .plots import profile_figure
        profile_figure(prof, fig)
        print(f"wrote {fig}")
    if not ok:
        print("error: quadrature did not converge at every grid point", file=sys.stderr)
        return 3
    return 0


def _run_point(cfg: RunConfig) -> int:
    r_p = cfg.values["r_prime"]
    spec = cfg.quad_spec()
    u3, q3 = surface.u3_hat_result(r_p, cfg.values["nu"], spec)
    ur, qr = surface.ur_hat_result(r_p, cfg.values["nu"], spec)
    nu = cfg.values["nu"]
    u3c = f"{(1.0 - nu) / r_p:.12g}" if r_p > 0 else ""
    urc = f"{-(1.0 - 2.0 * nu) / r_p:.12g}" if r_p > 0 else ""
    print(PROFILE_HEADER)
    print(f"{r_p:.12g},{u3:.12g},{ur:.12g},{u3c},{urc},{q3.err_est:.12g},{qr.err_est:.12g}")
    if not (q3.converged and qr.converged):
        print("error: quadrature did not converge", file=sys.stderr)
        return 3
    return 0


def _run_sweep(cfg: RunConfig) -> int:
    spec = cfg.quad_spec()
    nus = surface.SETTLEMENT_FIT_NU_GRID
    values = surface.settlement_curve(nus, spec)
    slope, intercept = np.polyfit(nus, values, 1)
    lines = ["nu,u3_hat_origin"]
    lines += [f"{nu:.12g},{val:.12g}" for nu, val in zip(nus, values)]
    lines.append(f"fit,{intercept:.12g},{slope:.12g}")
    Path(cfg.values["output"]).write_text("\n".join(lines) + "\n")
    print(f"wrote {cfg.values['output']} ({len(nus)} points)")
    print(f"fit: intercept = {intercept:.12g}, slope = {slope:.12g}")
    fig = _figure_path(cfg)
    if fig:
        from .plots import sweep_figure
        sweep_figure(nus, values, float(intercept), float(slope), fig)
        print(f"wrote {fig}")
    return 0


def _run_verify(cfg: RunConfig) -> int:
    report = transform.verification_sweep(
        cfg.material(), cfg.point_load(),
        n_samples=cfg.values["samples"], seed=cfg.values["seed"],
        tol=cfg.values["tol"], perturb_rel=cfg.values["perturb_coefficients"],
        collect_samples=cfg.values["csv"] is not None)
    print(f"samples = {report.n_samples}")
    print(f"seed = {report.seed}")
    print(f"max boundary residual (relative) = {report.max_boundary_rel:.12g}")
    print(f"max ode residual (relative) = {report.max_ode_rel:.12g}")
    print(f"determinant root residual (max) = {report.det_root_residual_max:.12g}")
    print(f"determinant third-derivative floor (min) = {report.det_third_deriv_floor:.12g}")
    print(f"contour identity deviation (max) = {report.contour_identity_dev:.12g}")
    print(f"threshold = {report.tol:.12g}")
    if cfg.values["csv"] is not None:
        lines = ["sample,p_re,p_im,q_re,q_im,bc_residual_rel,ode_residual_rel"]
        for i, (p, q, bc, ode) in enumerate(report.samples):
            lines.append(f"{i},{p.real:.12g},{p.imag:.12g},{q.real:.12g},{q.imag:.12g},"
                         f"{bc:.12g},{ode:.12g}")
        Path(cfg.values["csv"]).write_text("\n".join(lines) + "\n")
        print(f"wrote {cfg.values['csv']}")
    if not report.passed:
        p, q = report.worst_boundary_sample
        print("result: FAIL")
        print(f"worst boundary sample: p = {p.real:.12g}{p.imag:+.12g}j, "
              f"q = {q.real:.12g}{q.imag:+.12g}j", file=sys.stderr)
        return 4
    print("result: PASS")
    return 0


def _run_convolve(cfg: RunConfig) -> int:
    material = cfg.material()
    spec = cfg.quad_spec()
    load = superpose.AxisymmetricLoad.uniform(cfg.values["radius"], cfg.values["pressure"])
    eval_max = cfg.values["eval_max"]
    if eval_max is None:
        eval_max = 3.0 * cfg.values["radius"]
    radii = np.linspace(0.0, eval_max, cfg.values["n_eval"])
    table = superpose.SettlementTable(material.nu, spec)
    u3 = superpose.settlement_profile(load, material, radii, spec, table)
    lines = ["r,u3"]
    lines += [f"{r:.12g},{v:.12g}" for r, v in zip(radii, u3)]
    Path(cfg.values["output"]).write_text("\n".join(lines) + "\n")
    print(f"wrote {cfg.values['output']} ({len(radii)} points)")
    fig = _figure_path(cfg)
    if fig:
        from .plots import convolve_figure
        convolve_figure(radii, u3, cfg.values["radius"], fig)
        print(f"wrote {fig}")
    return 0


_RUNNERS = {
    "profile": _run_profile,
    "point": _run_point,
    "sweep": _run_sweep,
    "verify": _run_verify,
    "convolve": _run_convolve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _echo_config(cfg)
    try:
        return _RUNNERS[cfg.command](cfg)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
