"""Command-line interface.

    carakit check --F EXPR --phi EXPR        exit 0 holds-on-grid, 1 violated, 2 input error
    carakit fixed-point --F EXPR --phi EXPR [--r R] [--tol T] [--f SEED]
    carakit examples --which {1,2,3} [--out DIR]
    carakit bounds --mode {sector,argbound,omega,lens} VALUE
    carakit parse EXPR
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

import numpy as np

from . import __version__, reproduce
from .config import RunConfig, resolve
from .dsl import ParseError, format_map, parse
from .errors import CaraKitError, CertificationError, DomainError, PoleError, PreconditionError
from .fixedpoint import fixed_point, sample_disk, transform_power
from .model import certify_positive_real, certify_schwarz, evaluate
from .preservation import (
    SymbolPair, argbound_sufficient, lens_threshold, omega_norm_sufficient,
    rotation_test, scan_pair, sector_sufficient,
)
from .report import csv_text, dumps, envelope, leaf_svg

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT = 0, 1, 2

BOUNDS = {
    "sector": (sector_sufficient, "radians"),
    "argbound": (argbound_sufficient, "dimensionless"),
    "omega": (omega_norm_sufficient, "dimensionless"),
    "lens": (lens_threshold, "dimensionless"),
}


class _Input(Exception):
    """Wraps an input error with its JSON description."""

    def __init__(self, kind, message, **extra):
        super().__init__(message)
        self.payload = {"error": {"kind": kind, "message": message, **extra}}


def _parse_expr(text: str, flag: str):
    try:
        return parse(text)
    except ParseError as exc:
        d = exc.diagnostic
        raise _Input("parse", f"{flag}: {d.message}", offset=d.offset, expected=sorted(d.expected))


def _certify(kind, f, grid, flag):
    try:
        return certify_schwarz(f, grid) if kind == "schwarz" else certify_positive_real(f, grid)
    except CertificationError as exc:
        w = None if exc.witness is None else [exc.witness.real, exc.witness.imag]
        raise _Input("certification", f"{flag}: {exc}", witness=w)
    except PoleError as exc:
        raise _Input("pole", f"{flag}: {exc}")
    except DomainError as exc:
        raise _Input("domain", f"{flag}: {exc}")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--grid-J", dest="grid_J", type=int, help="number of radial refinement steps (default 40)")
    p.add_argument("--grid-M", dest="grid_M", type=int, help="number of angles (default 64)")
    p.add_argument("--rmax", type=float, help="outermost sampled radius (default 1 - 2**-10)")
    p.add_argument("--tol", type=float, help="slack band for check, product tolerance for fixed-point")
    p.add_argument("--lambda-samples", dest="lambda_samples", type=int, help="rotations in the rotation test")
    p.add_argument("--out", help="output file (directory for 'examples')")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--config", help="JSON config file (default: $CARA_KIT_CONFIG)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="carakit", description=__doc__.splitlines()[0] if __doc__ else None)
    ap.add_argument("--version", action="version", version=f"carakit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide admissibility of (F, phi) on the grid")
    p.add_argument("--F", required=True)
    p.add_argument("--phi", required=True)
    _common(p)

    p = sub.add_parser("fixed-point", help="construct the fixed point of f -> F (f o phi)")
    p.add_argument("--F", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--f", help="seed function; reports distance of its iterates to G")
    p.add_argument("--r", type=float, help="radius of the compact disk (default 0.8)")
    _common(p)

    p = sub.add_parser("examples", help="reproduce worked examples 1-3")
    p.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    _common(p)

    p = sub.add_parser("bounds", help="closed-form sufficiency thresholds")
    p.add_argument("--mode", choices=tuple(BOUNDS), required=True)
    p.add_argument("value", type=float)
    _common(p)

    p = sub.add_parser("parse", help="echo the canonical form of an expression")
    p.add_argument("expr", nargs="?")
    p.add_argument("--f", dest="f_expr")
    _common(p)
    return ap


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------


def cmd_check(args, cfg: RunConfig, argv):
    grid = cfg.grid()
    F = _certify("positive", _parse_expr(args.F, "--F"), grid, "--F")
    phi = _certify("schwarz", _parse_expr(args.phi, "--phi"), grid, "--phi")
    pair = SymbolPair(F, phi)
    rep = scan_pair(pair, grid, boundary_tol=cfg.slack_tol)
    rot = rotation_test(pair, grid, cfg.lambda_samples, boundary_tol=cfg.slack_tol)
    code = EXIT_OK if rep.holds else EXIT_VIOLATED
    if cfg.format == "csv":
        from .preservation import slack_c, slack_d

        pts = grid.points()
        sc = slack_c(evaluate(phi.map, pts), evaluate(F.omega, pts))
        sd = slack_d(evaluate(F.F, pts), evaluate(phi.map, pts))
        rows = ((z.real, z.imag, c, d) for z, c, d in zip(pts, sc, sd))
        _emit(csv_text(("x", "y", "slack_c", "slack_d_radians"), rows), cfg.out)
        return code
    payload = {
        "F": format_map(F.F),
        "phi": format_map(phi.map),
        "verdict": rep.verdict,
        "scan": rep.to_dict(),
        "rotation": rot.to_dict(),
        "agreement": rep.verdict == rot.verdict,
    }
    _emit(dumps(envelope(argv, cfg.to_dict(), "criterion_report", payload)), cfg.out)
    return code


def cmd_fixed_point(args, cfg: RunConfig, argv):
    grid = cfg.grid()
    F = _certify("positive", _parse_expr(args.F, "--F"), grid, "--F")
    phi = _certify("schwarz", _parse_expr(args.phi, "--phi"), grid, "--phi")
    seed = _parse_expr(args.f, "--f") if args.f else None
    try:
        res = fixed_point(F, phi, r=cfg.fp_radius, tol=cfg.fp_tol, grid=grid)
    except PreconditionError as exc:
        detail = exc.detail.to_dict() if hasattr(exc.detail, "to_dict") else None
        payload = {"refused": str(exc), "detail": detail}
        _emit(dumps(envelope(argv, cfg.to_dict(), "fixed_point_result", payload)), cfg.out)
        return EXIT_VIOLATED
    except CaraKitError as exc:
        payload = {"refused": str(exc), "detail": None}
        _emit(dumps(envelope(argv, cfg.to_dict(), "fixed_point_result", payload)), cfg.out)
        return EXIT_VIOLATED
    if cfg.format == "csv":
        pts = sample_disk(cfg.fp_radius)
        g = res.G(pts)
        rows = ((z.real, z.imag, v.real, v.imag) for z, v in zip(pts, g))
        _emit(csv_text(("x", "y", "re_G", "im_G"), rows), cfg.out)
        return EXIT_OK
    payload = res.to_dict()
    payload["F"] = format_map(F.F)
    payload["phi"] = format_map(phi.map)
    if seed is not None:
        pts = res.samples
        it = transform_power(F.F, phi.map, seed, res.n_terms, pts)
        payload["seed"] = format_map(seed)
        payload["seed_distance"] = float(np.max(np.abs(it - res.G(pts))))
    _emit(dumps(envelope(argv, cfg.to_dict(), "fixed_point_result", payload)), cfg.out)
    return EXIT_OK


def _write(outdir, name, text):
    if outdir:
        os.makedirs(outdir, exist_ok=True)
        path = os.path.join(outdir, name)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        return path
    return None


def cmd_examples(args, cfg: RunConfig, argv):
    grid = cfg.grid()
    outdir = cfg.out
    files = []
    if args.which == 1:
        data = reproduce.example1(grid=grid)
        rows = [(r["R"], r["eps"], r["verdict"], r["threshold"]) for r in data["rows"]]
        files.append(_write(outdir, "example1_verdicts.csv", csv_text(("R", "eps", "verdict", "threshold"), rows)))
        curve = [(c["R"], c["threshold"], c["grid_threshold"]) for c in data["curve"]]
        files.append(_write(outdir, "example1_threshold.csv", csv_text(("R", "threshold", "grid_threshold"), curve)))
        payload = {"which": 1, "curve": data["curve"], "n_rows": len(rows), "grid": data["grid"]}
    elif args.which == 2:
        payload = {"which": 2, **reproduce.example2(grid=grid)}
    else:
        data = reproduce.example3()
        curve = data.pop("curve")
        files.append(_write(outdir, "leaf_boundary.csv", csv_text(("theta", "r", "x", "y"), curve)))
        files.append(_write(outdir, "leaf_boundary.svg", leaf_svg(curve)))
        payload = {"which": 3, **data, "n_curve": len(curve)}
    payload["files"] = [f for f in files if f]
    text = dumps(envelope(argv, cfg.to_dict(), "example_report", payload))
    if outdir:
        _write(outdir, f"example{args.which}.json", text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_bounds(args, cfg: RunConfig, argv):
    fn, unit = BOUNDS[args.mode]
    try:
        value = fn(args.value)
    except DomainError as exc:
        raise _Input("domain", str(exc))
    in_unit = "radians" if args.mode == "argbound" else "dimensionless"
    payload = {"mode": args.mode, "value": args.value, "threshold": value,
               "units": {"value": in_unit, "threshold": unit}}
    _emit(dumps(envelope(argv, cfg.to_dict(), "bound_report", payload)), cfg.out)
    return EXIT_OK


def cmd_parse(args, cfg: RunConfig, argv, explicit_json):
    text = args.expr if args.expr is not None else args.f_expr
    if text is None:
        raise _Input("parse", "no expression given", offset=0)
    f = _parse_expr(text, "expr")
    canon = format_map(f)
    if explicit_json:
        payload = {"input": text, "canonical": canon, "value_at_0": evaluate(f, 0j)}
        _emit(dumps(envelope(argv, cfg.to_dict(), "parse_result", payload)), cfg.out)
    else:
        _emit(canon + "\n", cfg.out)
    return EXIT_OK


COMMANDS = {"check": cmd_check, "fixed-point": cmd_fixed_point, "examples": cmd_examples, "bounds": cmd_bounds}


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    overrides = {
        "grid_J": args.grid_J, "grid_M": args.grid_M, "rmax": args.rmax,
        "lambda_samples": args.lambda_samples, "out": args.out, "format": args.format,
        "fp_radius": getattr(args, "r", None),
    }
    if args.tol is not None:
        overrides["fp_tol" if args.command == "fixed-point" else "slack_tol"] = args.tol
    try:
        cfg = resolve(overrides, args.config)
    except (DomainError, OSError, ValueError) as exc:
        payload = {"error": {"kind": "config", "message": str(exc)}}
        sys.stdout.write(dumps(envelope(argv, RunConfig().to_dict(), "error", payload)))
        return EXIT_INPUT
    try:
        if args.command == "parse":
            return cmd_parse(args, cfg, argv, args.format == "json")
        return COMMANDS[args.command](args, cfg, argv)
    except _Input as exc:
        sys.stdout.write(dumps(envelope(argv, cfg.to_dict(), "error", exc.payload)))
        return EXIT_INPUT
    except OSError as exc:
        payload = {"error": {"kind": "io", "message": str(exc)}}
        sys.stdout.write(dumps(envelope(argv, cfg.to_dict(), "error", payload)))
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
