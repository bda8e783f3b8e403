"""Command-line interface.

Exit codes: 0 success, 1 unreadable or malformed input, 2 validation
failure, 3 spectral failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io
from .canonical import DEFAULT_S0
from .errors import (
    DegenerateNormalization,
    NonUnitDirection,
    ParseError,
    PoleEvaluation,
    SpectralFailure,
    ValidationError,
    ZeroProbabilityOutcome,
)
from .pauli import DEFAULT_TOL
from .report import DEFAULT_SEED, DEFAULT_SURFACE_SAMPLES, analysis_report, run_pipeline
from .spectral import h_profile
from .steering import ALICE, BOB, sample_surface, steer

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_SPECTRAL = 3

DIRECTION_TOL = 1e-6
DEFAULT_PROFILE_SAMPLES = 1000
DEFAULT_MESH_POINTS = 2000


def _emit_json(obj, out) -> None:
    if out:
        io.write_json(out, obj)
    else:
        sys.stdout.write(io.dumps_json(obj))


def _emit_csv(header, rows, out) -> None:
    if out:
        io.write_csv(out, header, rows)
    else:
        sys.stdout.write(io.csv_text(header, rows))


def _sidecar(out) -> str | None:
    return str(Path(out).with_suffix(".json")) if out else None


def _pipeline(args):
    return run_pipeline(io.load_input(args.input), tol=args.tol, dtol=args.dtol, s0=args.s0)


def _positive_samples(args) -> None:
    if args.samples < 1:
        raise ValidationError("--samples must be positive")


def cmd_analyze(args) -> int:
    _positive_samples(args)
    an = _pipeline(args)
    _emit_json(analysis_report(an, seed=args.seed, samples=args.samples), args.out)
    return EXIT_OK


def _auto_window(prof_poles, roots) -> tuple[float, float]:
    pts = list(prof_poles) + list(roots)
    lo, hi = min(pts), max(pts)
    pad = max(0.25 * (hi - lo), 0.1 * max(abs(hi), abs(lo)), 0.05)
    return lo - pad, hi + pad


def cmd_hprofile(args) -> int:
    if args.samples < 2:
        raise ValidationError("--samples must be at least 2")
    an = _pipeline(args)
    om = an.eigensystem.omega
    lo, hi = args.lambda_min, args.lambda_max
    if lo is None or hi is None:
        auto_lo, auto_hi = _auto_window(an.eigensystem.case.poles, an.eigensystem.eigenvalues)
        lo = auto_lo if lo is None else lo
        hi = auto_hi if hi is None else hi
    if not lo < hi:
        raise ValidationError(f"empty window [{lo:g}, {hi:g}]")
    prof = h_profile(om, lo, hi, args.samples, dtol=args.dtol)
    _emit_csv(("lambda", "h", "is_gap"), io.hprofile_rows(prof.samples), args.out)
    side = {
        "case_id": prof.case_id,
        "lambda_min": lo,
        "lambda_max": hi,
        "poles": list(prof.poles),
        "gaps": prof.gaps,
        "roots": [
            {
                "lambda": r.value,
                "multiplicity": r.multiplicity,
                "slope": r.slope,
                "double_root": r.multiplicity == 2,
            }
            for r in prof.roots
        ],
        "root_count": prof.root_count,
        "distinct_roots": len(prof.roots),
        "double_root": any(r.multiplicity == 2 for r in prof.roots),
        "phi1_roots": list(prof.phi1_roots),
    }
    if args.out:
        io.write_json(_sidecar(args.out), side)
    else:
        sys.stderr.write(io.dumps_json(side))
    return EXIT_OK


def cmd_ellipsoid(args) -> int:
    _positive_samples(args)
    an = _pipeline(args)
    pts = sample_surface(an.ellipsoid, args.samples)
    _emit_csv(("x", "y", "z"), io.mesh_rows(pts), args.out)
    side = an.ellipsoid.to_dict()
    side["points"] = int(args.samples)
    if args.out:
        io.write_json(_sidecar(args.out), side)
    else:
        sys.stderr.write(io.dumps_json(side))
    return EXIT_OK


def cmd_steer(args) -> int:
    p = np.asarray(args.direction, dtype=float)
    norm = float(np.linalg.norm(p))
    if abs(norm - 1.0) > DIRECTION_TOL:
        raise NonUnitDirection(f"|p| = {norm:.9g} is not within {DIRECTION_TOL:g} of 1")
    p = p / norm
    if args.canonical:
        lam = _pipeline(args).canonical.lambda_canonical
    else:
        loaded = io.load_input(args.input)
        if loaded.kind == io.OMEGA:
            raise ValidationError("steering needs a state or lambda; use --canonical for an Omega input")
        lam = run_pipeline(loaded, tol=args.tol, dtol=args.dtol, s0=args.s0).lam
    _emit_json(steer(lam, p, measured=args.measured).to_dict(), args.out)
    return EXIT_OK


def cmd_batch(args) -> int:
    """Analyze every ``*.json`` in a directory; one report per file in ``--out``."""
    src = Path(args.input)
    if not src.is_dir():
        raise ParseError(f"{src} is not a directory")
    dst = Path(args.out) if args.out else None
    if dst is not None:
        dst.mkdir(parents=True, exist_ok=True)
    summary = {}
    worst = EXIT_OK
    for path in sorted(src.glob("*.json")):
        code, payload = _guarded(lambda: analysis_report(
            run_pipeline(io.load_input(path), tol=args.tol, dtol=args.dtol, s0=args.s0),
            seed=args.seed,
            samples=args.samples,
        ))
        worst = max(worst, code)
        if code == EXIT_OK:
            summary[path.name] = {"exit": code, "class": payload["class"], "case_id": payload["case_id"]}
            if dst is not None:
                io.write_json(dst / f"{path.stem}.report.json", payload)
        else:
            summary[path.name] = {"exit": code, "error": payload}
    if dst is not None:
        io.write_json(dst / "summary.json", summary)
    else:
        sys.stdout.write(io.dumps_json(summary))
    return worst


def _exit_code(exc: BaseException) -> int | None:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, (ValidationError, ZeroProbabilityOutcome)):
        return EXIT_VALIDATION
    if isinstance(exc, (SpectralFailure, DegenerateNormalization, PoleEvaluation)):
        return EXIT_SPECTRAL
    return None


def _guarded(fn):
    try:
        return EXIT_OK, fn()
    except Exception as exc:
        code = _exit_code(exc)
        if code is None:
            raise
        return code, f"{type(exc).__name__}: {exc}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorentzcanon",
        description="Lorentz canonical forms and steering ellipsoids of two-qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="JSON file with key 're'/'im', 'lambda' or 'omega'")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="validation tolerance (default %(default)g)")
    common.add_argument(
        "--dtol", type=float, default=None,
        help="degeneracy tolerance for case classification (default: 1e-8 times the spectral scale)",
    )
    common.add_argument(
        "--s0", type=float, default=DEFAULT_S0,
        help="gauge value of s0 for the non-diagonal class (default %(default)g)",
    )

    p = sub.add_parser("analyze", parents=[common], help="full analysis report as JSON")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for the surface check (default %(default)d)")
    p.add_argument("--samples", type=int, default=DEFAULT_SURFACE_SAMPLES,
                   help="steering directions in the surface check (default %(default)d)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("hprofile", parents=[common],
                       help="samples of h(lambda) as CSV; roots and poles go to a sidecar JSON")
    p.add_argument("--lambda-min", type=float, default=None, help="window start (default: fitted to poles and roots)")
    p.add_argument("--lambda-max", type=float, default=None, help="window end (default: fitted to poles and roots)")
    p.add_argument("--samples", type=int, default=DEFAULT_PROFILE_SAMPLES, help="grid size (default %(default)d)")
    p.set_defaults(func=cmd_hprofile)

    p = sub.add_parser("ellipsoid", parents=[common],
                       help="canonical ellipsoid mesh as CSV; center and axes go to a sidecar JSON")
    p.add_argument("--samples", type=int, default=DEFAULT_MESH_POINTS, help="mesh points (default %(default)d)")
    p.set_defaults(func=cmd_ellipsoid)

    p = sub.add_parser("steer", parents=[common], help="steered Bloch vector for one projective measurement")
    p.add_argument("--direction", type=float, nargs=3, required=True, metavar=("PX", "PY", "PZ"),
                   help="Bloch direction of the projector (unit length within 1e-6)")
    p.add_argument("--canonical", action="store_true", help="steer the canonical form instead of the input")
    p.add_argument("--measured", choices=(BOB, ALICE), default=BOB,
                   help="qubit that is measured (default %(default)s)")
    p.set_defaults(func=cmd_steer)

    p = sub.add_parser("batch", parents=[common], help="analyze every *.json in the --input directory")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=DEFAULT_SURFACE_SAMPLES)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage; that code is reserved for invalid states
        return EXIT_PARSE if exc.code else EXIT_OK
    code, payload = _guarded(lambda: args.func(args))
    if code != EXIT_OK:
        sys.stderr.write(f"error: {payload}\n")
        return code
    return payload


if __name__ == "__main__":
    sys.exit(main())
