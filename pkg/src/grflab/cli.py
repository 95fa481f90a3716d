"""``grf-lab`` command-line front end.

Every command prints a JSON report on stdout.  With ``--out DIR`` the report
and any CSV data are also written to ``DIR``.  Reports embed the resolved
configuration and the package version, and carry no timestamps, so a fixed
configuration and seed give identical bytes.

Exit codes: 0 success or convergence, 1 a check failed, 2 usage or
validation error, 3 positivity escape, 4 time budget exhausted, 5 step-size
underflow.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import io as gio
from .curvature import grf_rhs_closed
from .flow import GridSpec, Plane, integrate, portrait, sink_check
from .integrator import IntegratorConfig, Verdict
from .son import (build_nice_basis, harmonicity_residual, son_integrate, son_jacobian_at_killing,
                  son_jacobian_fd)
from .space import AlignedParams, brf_fixed_point, load_catalog, lookup, make_params
from .stability import (case1_certificate, check_global_hypotheses, global_positivity_scan,
                        q_sign_suite, spectrum_report)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
VERDICT_EXIT = {Verdict.CONVERGED: 0, Verdict.ESCAPED_POSITIVITY: 3,
                Verdict.MAX_TIME: 4, Verdict.STEP_UNDERFLOW: 5}


class UsageError(Exception):
    pass


# --- argument handling -----------------------------------------------------------

def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in str(text).split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _pair(text) -> tuple[float, float]:
    vals = list(text) if isinstance(text, (list, tuple)) else _floats(text)
    if len(vals) != 2 or not vals[0] < vals[1]:
        raise UsageError(f"expected an increasing pair lo,hi, got {text!r}")
    return float(vals[0]), float(vals[1])


def _common(p: argparse.ArgumentParser, space: bool = True) -> None:
    g = p.add_argument_group("common")
    g.add_argument("--config", help="JSON file whose keys override command-line flags")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="directory for JSON and CSV outputs")
    if space:
        g.add_argument("--catalog", help="JSON array of extra space descriptors")
        g.add_argument("--space", help="catalog name")
        g.add_argument("--c1")
        g.add_argument("--lambda", dest="lam")
        g.add_argument("--kappa", help="kappa1 (and kappa2 unless given)")
        g.add_argument("--kappa2")


def _integrator_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("integrator")
    d = IntegratorConfig()
    g.add_argument("--rel-tol", type=float, default=d.rel_tol)
    g.add_argument("--abs-tol", type=float, default=d.abs_tol)
    g.add_argument("--max-time", type=float, default=d.max_time)
    g.add_argument("--min-step", type=float, default=d.min_step)
    g.add_argument("--max-step", type=float, default=d.max_step)
    g.add_argument("--positivity-floor", type=float, default=d.positivity_floor)
    g.add_argument("--convergence-radius", type=float, default=d.convergence_radius)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grf-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"grf-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fixed-point", help="BRF metric, residual and spectrum")
    _common(p)

    p = sub.add_parser("simulate", help="integrate the flow from x0")
    _common(p)
    p.add_argument("--x0", required=False)
    _integrator_flags(p)

    p = sub.add_parser("portrait", help="in-plane direction field and streamlines")
    _common(p)
    p.add_argument("--plane", default=Plane.X3_FIXED.value,
                   help="X3Fixed (x3 = c1/(c1-1)) or X1PropX2 (x1 = (c1-1) x2)")
    p.add_argument("--resolution", type=int, default=12)
    p.add_argument("--u-range", default="0.2,4")
    p.add_argument("--v-range", default="0.2,4")
    p.add_argument("--no-streamlines", action="store_true")

    p = sub.add_parser("lyapunov", help="positivity scan and sign certificates")
    _common(p)
    p.add_argument("--samples", type=int, default=10 ** 6)
    p.add_argument("--case1-samples", type=int, default=10 ** 5)

    p = sub.add_parser("son", help="SO(n) structure constants and flow")
    _common(p, space=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("action", choices=["dump", "jacobian", "harmonicity", "simulate"])
    p.add_argument("--x0", help="comma-separated start; random in [0.8, 1.25] when omitted")
    _integrator_flags(p)
    return parser


def _apply_config(args: argparse.Namespace) -> None:
    if not args.config:
        return
    try:
        cfg = json.loads(Path(args.config).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    for key, value in cfg.items():
        dest = {"lambda": "lam"}.get(key, key.replace("-", "_"))
        if dest in ("command", "config") or not hasattr(args, dest):
            raise UsageError(f"unknown config key {key!r}")
        if isinstance(value, list) and dest in ("x0", "u_range", "v_range"):
            value = ",".join(repr(float(v)) for v in value)
        setattr(args, dest, value)


def _resolved(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "config"}


def _params(args: argparse.Namespace) -> AlignedParams:
    if args.space:
        return lookup(args.space, load_catalog(args.catalog))
    if args.c1 is None or args.lam is None or args.kappa is None:
        raise UsageError("give --space NAME or all of --c1, --lambda, --kappa")
    return make_params(args.c1, args.lam, args.kappa, args.kappa2)


def _integrator(args) -> IntegratorConfig:
    return IntegratorConfig(rel_tol=args.rel_tol, abs_tol=args.abs_tol, max_time=args.max_time,
                            min_step=args.min_step, max_step=args.max_step,
                            positivity_floor=args.positivity_floor,
                            convergence_radius=args.convergence_radius)


def _emit(args, name: str, report: dict) -> None:
    report = {**report, "config": _resolved(args), "version": __version__}
    text = gio.dumps(report)
    if args.out:
        gio.write_json(Path(args.out) / f"{name}.json", report)
    sys.stdout.write(text)


# --- commands --------------------------------------------------------------------

def cmd_fixed_point(args) -> int:
    params = _params(args)
    g0 = brf_fixed_point(params)
    spec = spectrum_report(params)
    _emit(args, "fixed_point", {
        "params": params.as_dict(),
        "fixed_point": list(g0.as_array()),
        "residual_inf": float(np.max(np.abs(grf_rhs_closed(params, g0).as_array()))),
        "eigenvalues": list(spec.analytic_eigenvalues),
        "spectrum": spec.as_dict(),
    })
    return EXIT_OK


def _trajectory_report(traj, target) -> dict:
    return {
        "verdict": traj.verdict.value,
        "steps": len(traj) - 1,
        "t_final": float(traj.t[-1]),
        "endpoint": list(traj.final),
        "distance_to_target": float(np.max(np.abs(traj.final - target))),
        "lyapunov_nonincreasing": None if traj.lyapunov is None
        else bool(np.all(np.diff(traj.lyapunov) <= 1e-9)),
    }


def cmd_simulate(args) -> int:
    params = _params(args)
    if args.x0 is None:
        raise UsageError("--x0 is required")
    x0 = _floats(args.x0)
    if len(x0) != 3 or not all(np.isfinite(x0)) or min(x0) <= 0:
        raise UsageError(f"--x0 needs three positive numbers, got {args.x0!r}")
    traj = integrate(params, x0, _integrator(args))
    if args.out:
        gio.write_trajectory(Path(args.out) / "trajectory.csv", traj)
    target = brf_fixed_point(params).as_array()
    _emit(args, "simulate", {"params": params.as_dict(), "target": list(target),
                             **_trajectory_report(traj, target)})
    return VERDICT_EXIT[traj.verdict]


def cmd_portrait(args) -> int:
    params = _params(args)
    try:
        plane = Plane.parse(args.plane)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.resolution < 0:
        raise UsageError("--resolution must be >= 0")
    grid = GridSpec(_pair(args.u_range), _pair(args.v_range), args.resolution,
                    not args.no_streamlines)
    pg = portrait(params, plane, grid)
    report = {"metadata": pg.metadata(params)}
    if grid.streamlines and len(pg):
        check = sink_check(pg, box=(grid.u_range, grid.v_range))
        report["sink_check"] = check.as_dict()
        report["verdicts"] = {v.value: sum(1 for w in pg.verdicts if w is v) for v in Verdict}
    if args.out:
        out = Path(args.out)
        gio.write_portrait(out / "portrait.csv", pg)
        if grid.streamlines:
            gio.write_streamlines(out / "streamlines.csv", pg)
    _emit(args, "portrait", report)
    return EXIT_OK if report.get("sink_check", {"pass": True})["pass"] else EXIT_FAIL


def cmd_lyapunov(args) -> int:
    params = _params(args)
    check_global_hypotheses(params)
    scan = global_positivity_scan(params.lam, params.kappa1, samples=args.samples, seed=args.seed)
    cert = case1_certificate(args.case1_samples, seed=args.seed)
    qs = q_sign_suite()
    ok = scan.passed and cert.passed and qs["pass"]
    _emit(args, "lyapunov", {"params": params.as_dict(), "scan": scan.as_dict(),
                             "case1": cert.as_dict(), "q": qs, "q(2)": qs["q(2)"],
                             "verdict": "PASS" if ok else "FAIL"})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_son(args) -> int:
    if args.n < 3:
        raise UsageError(f"--n must be >= 3, got {args.n}")
    basis = build_nice_basis(args.n)
    head = {"n": basis.n, "dim": basis.dim, "diagnostics": list(basis.diagnostics)}
    ones = np.ones(basis.dim)
    if args.action == "dump":
        path = Path(args.out) / "structure_constants.csv" if args.out else None
        if path is not None:
            gio.write_structure_constants(path, basis)
        _emit(args, "son_dump", {**head, "index_map": [list(rs) for rs in basis.index_map],
                                 "norm_factor": basis.norm_factor,
                                 "nonzero": int(np.count_nonzero(basis.dense())),
                                 "casimir": list(basis.casimir())})
        return EXIT_OK
    if args.action == "jacobian":
        fd = son_jacobian_fd(basis, ones)
        diag = son_jacobian_at_killing(basis)
        _emit(args, "son_jacobian", {**head, "diagonal": list(diag),
                                     "fd_diagonal": list(np.diag(fd)),
                                     "fd_max_offdiagonal": float(np.max(np.abs(fd - np.diag(np.diag(fd)))))})
        return EXIT_OK
    rng = np.random.default_rng(args.seed)
    if args.action == "harmonicity":
        x = rng.uniform(0.5, 2.0, basis.dim)
        res = harmonicity_residual(basis, x)
        _emit(args, "son_harmonicity", {**head, "metric": list(x), "residual": res})
        return EXIT_OK if res == 0 else EXIT_FAIL
    if args.x0 is None:
        x0 = rng.uniform(0.8, 1.25, basis.dim)
    else:
        x0 = np.array(_floats(args.x0))
        if x0.shape != (basis.dim,) or np.any(x0 <= 0):
            raise UsageError(f"--x0 needs {basis.dim} positive numbers")
    traj = son_integrate(basis, x0, _integrator(args))
    if args.out:
        gio.write_trajectory(Path(args.out) / "trajectory.csv", traj, with_lyapunov=False)
    _emit(args, "son_simulate", {**head, "x0": list(x0), **_trajectory_report(traj, ones)})
    return VERDICT_EXIT[traj.verdict]


COMMANDS = {"fixed-point": cmd_fixed_point, "simulate": cmd_simulate, "portrait": cmd_portrait,
            "lyapunov": cmd_lyapunov, "son": cmd_son}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        _apply_config(args)
        return COMMANDS[args.command](args)
    except (UsageError, ValueError, KeyError) as exc:
        # ParameterError, DomainError and PreconditionError are ValueErrors
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"grf-lab: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
