"""Command-line surface: verify / catalog / analyze.

Exit codes: 0 on success, 1 when a check or assertion fails (the report is
still written), 2 on usage or schema errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .defaults import ARTIFACT, TOLERANCES, VERSION
from .energy import report_csv_rows, report_to_dict, rotational_energy
from .errors import RigidityError
from .surfaces import (
    build_catenoid,
    build_cylinder,
    build_ellipsoid,
    build_rotation_hypersurface,
    build_sphere,
    ingest_field,
    save_field,
)
from .verify import run_verification_campaign

SURFACES = ("sphere", "cylinder", "catenoid", "rotation", "ellipsoid")


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def _float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part]


def _grid(text: str) -> list[int]:
    return [int(part) for part in text.lower().split("x") if part]


def _default_threads() -> int:
    env = os.environ.get("RIGIDITY_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=ARTIFACT,
                                     description="Trace-free inequality and rotational energy toolkit")
    parser.add_argument("--version", action="version", version=f"{ARTIFACT} {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run randomized inequality campaigns")
    p_verify.add_argument("--n", type=_int_list, default=[4, 5, 6],
                          help="comma-separated matrix dimensions (default 4,5,6)")
    p_verify.add_argument("--samples", type=int, required=True,
                          help="total number of random matrices")
    p_verify.add_argument("--seed", type=int, required=True, help="campaign seed")
    p_verify.add_argument("--lambda-count", type=int, default=100,
                          help="shift values per matrix in the lambda scan")
    p_verify.add_argument("--threads", type=int, default=None,
                          help="worker threads (default: RIGIDITY_THREADS or machine parallelism)")
    p_verify.add_argument("--out", required=True, help="report JSON path")

    p_catalog = sub.add_parser("catalog", help="construct a sampled hypersurface")
    p_catalog.add_argument("--surface", required=True, choices=SURFACES)
    p_catalog.add_argument("--n", type=int, required=True, help="hypersurface dimension")
    p_catalog.add_argument("--grid", type=_grid, default=None, help="sample counts, e.g. 64x32")
    p_catalog.add_argument("--radius", type=float, default=1.0)
    p_catalog.add_argument("--height", type=float, default=2.0)
    p_catalog.add_argument("--t-max", type=float, default=None, help="catenoid profile half-range")
    p_catalog.add_argument("--ode-substeps", type=int, default=None,
                           help="integration steps per profile cell")
    p_catalog.add_argument("--profile-tol", type=float, default=None,
                           help="minimality residual target for the catenoid")
    p_catalog.add_argument("--profile-coeffs", type=_float_list, default=[1.0, 0.0, 1.0],
                           help="polynomial profile coefficients, lowest degree first")
    p_catalog.add_argument("--t-range", type=_float_list, default=[-1.0, 1.0],
                           help="profile parameter range for rotation surfaces")
    p_catalog.add_argument("--semi-axes", type=_float_list, default=None,
                           help="ellipsoid semi-axes (n + 1 values)")
    p_catalog.add_argument("--fd-step", type=float, default=None,
                           help="finite-difference step for chart surfaces")
    p_catalog.add_argument("--out", required=True, help="field JSON path")

    p_analyze = sub.add_parser("analyze", help="energies and classification of a field file")
    p_analyze.add_argument("--field", required=True, help="field JSON path")
    p_analyze.add_argument("--out", required=True, help="report JSON path")
    p_analyze.add_argument("--csv", default=None, help="optional per-sample CSV path")
    p_analyze.add_argument("--assert-zero", type=float, default=None, metavar="TOL",
                           help="exit 1 when E_rot_conf exceeds TOL x quadrature scale")
    return parser


def cmd_verify(args) -> int:
    if args.samples < 1:
        print("samples must be >= 1", file=sys.stderr)
        return 2
    if not args.n or any(n < 4 for n in args.n):
        print(f"dimensions must all be >= 4, got {args.n}", file=sys.stderr)
        return 2
    if args.lambda_count < 1:
        print("lambda-count must be >= 1", file=sys.stderr)
        return 2
    threads = args.threads if args.threads is not None else _default_threads()
    report = run_verification_campaign(args.n, args.samples, args.seed,
                                       lambda_count=args.lambda_count,
                                       threads=max(1, threads))
    _write_json(args.out, report)
    families = report["checks"]
    passed = sum(1 for stats in families.values() if stats["pass"])
    print(f"verify: {passed}/{len(families)} check families passed; report written to {args.out}")
    return 0 if report["pass"] else 1


def _build_surface(args):
    if args.surface == "sphere":
        return build_sphere(args.n, args.radius, grid=args.grid)
    if args.surface == "cylinder":
        return build_cylinder(args.n, args.radius, args.height, grid=args.grid)
    if args.surface == "catenoid":
        return build_catenoid(args.n, grid=args.grid, profile_tol=args.profile_tol,
                              t_max=args.t_max, ode_substeps=args.ode_substeps)
    if args.surface == "rotation":
        coeffs = args.profile_coeffs

        def poly(t: float) -> float:
            acc = 0.0
            for c in reversed(coeffs):
                acc = acc * t + c
            return acc

        def dpoly(t: float) -> float:
            acc = 0.0
            for k in range(len(coeffs) - 1, 0, -1):
                acc = acc * t + k * coeffs[k]
            return acc

        def d2poly(t: float) -> float:
            acc = 0.0
            for k in range(len(coeffs) - 1, 1, -1):
                acc = acc * t + k * (k - 1) * coeffs[k]
            return acc

        if len(args.t_range) != 2:
            raise RigidityError(f"t-range needs two values, got {args.t_range}")
        return build_rotation_hypersurface(args.n, poly, grid=args.grid,
                                           t_range=(args.t_range[0], args.t_range[1]),
                                           fp=dpoly, fpp=d2poly)
    if args.surface == "ellipsoid":
        axes = args.semi_axes
        if axes is None:
            axes = [1.0 + 0.2 * i for i in range(args.n + 1)]
        if len(axes) != args.n + 1:
            raise RigidityError(
                f"ellipsoid of dimension {args.n} needs {args.n + 1} semi-axes, got {len(axes)}")
        return build_ellipsoid(axes, grid=args.grid, fd_step=args.fd_step)
    raise RigidityError(f"unknown surface {args.surface!r}; valid: {', '.join(SURFACES)}")


def cmd_catalog(args) -> int:
    try:
        field = _build_surface(args)
    except RigidityError as exc:
        print(f"catalog: {exc}", file=sys.stderr)
        return 2
    save_field(field, args.out)
    print(f"catalog: wrote {len(field.samples)} samples ({field.spec.kind}, n={field.spec.n}) "
          f"to {args.out}")
    return 0


def cmd_analyze(args) -> int:
    try:
        field = ingest_field(args.field)
        report = rotational_energy(field)
    except RigidityError as exc:
        print(f"analyze: {exc}", file=sys.stderr)
        return 2
    payload = {
        "artifact": ARTIFACT,
        "version": VERSION,
        "command": "analyze",
        "field": {
            "path": str(args.field),
            "kind": field.spec.kind,
            "n": field.spec.n,
            "minimal_claimed": field.minimal_claimed,
        },
        "tolerances": dict(TOLERANCES),
        "report": report_to_dict(report),
    }
    _write_json(args.out, payload)
    if args.csv:
        header, rows = report_csv_rows(report)
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    print(f"analyze: {field.spec.kind} n={field.spec.n} classification={report.classification} "
          f"E_rot={report.e_rot:.6e} E_rot_conf={report.e_rot_conf:.6e}")
    if args.assert_zero is not None:
        if abs(report.e_rot_conf) > args.assert_zero * report.quadrature_scale_conf:
            print(f"analyze: E_rot_conf {report.e_rot_conf:.3e} exceeds "
                  f"{args.assert_zero:g} x scale {report.quadrature_scale_conf:.3e}",
                  file=sys.stderr)
            return 1
    return 0


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "catalog":
        return cmd_catalog(args)
    if args.command == "analyze":
        return cmd_analyze(args)
    parser.print_usage(sys.stderr)  # pragma: no cover
    return 2  # pragma: no cover


def run() -> None:
    sys.exit(main())
