"""Command-line front end: ``analyze``, ``prove`` and ``scan``.

Exit codes: 0 success, 1 usage or input error, 2 excluded geometry
(vanishing Gaussian curvature), 3 internal verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import exprlang, finitetype, report
from .elim import CASES, ReductionError, run_case, verify_certificates
from .geometry import ConsistencyError, FlatPointError, GeometryError
from .surfaces import SurfaceError, load_surface, parse_catalog_uri

EXIT_OK, EXIT_INPUT, EXIT_FLAT, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise UsageError(f"grid must look like NxM, got {text!r}") from None


def _surface(spec: str):
    if spec.startswith("catalog:"):
        return parse_catalog_uri(spec)
    return load_surface(spec)


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _run_guarded(fn, args) -> int:
    try:
        return fn(args)
    except FlatPointError as exc:
        _err(f"excluded geometry (K = 0): {exc}")
        return EXIT_FLAT
    except (ConsistencyError, ReductionError) as exc:
        _err(f"verification failed: {exc}")
        return EXIT_VERIFY
    except exprlang.ExprSyntaxError as exc:
        _err(f"syntax error: {exc}")
        return EXIT_INPUT
    except (UsageError, SurfaceError, exprlang.ExprError, finitetype.GridError,
            finitetype.RankDeficientError, GeometryError, OSError) as exc:
        _err(str(exc))
        return EXIT_INPUT


# -- analyze ------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    surface = _surface(args.surface)
    n_u, n_v = _grid(args.grid)
    rep = report.analyze(surface, n_u, n_v, tol=args.tol)
    if args.json:
        print(rep.to_json())
    elif args.csv:
        sys.stdout.write(rep.to_csv())
    else:
        print(rep.to_text())
    return EXIT_OK if rep.all_passed() else EXIT_VERIFY


# -- prove --------------------------------------------------------------------------

def cmd_prove(args) -> int:
    tags = CASES if args.case.lower() == "all" else (args.case.upper(),)
    for t in tags:
        if t not in CASES:
            raise UsageError(f"unknown case {t!r}; expected one of {', '.join(CASES)} or all")
    bundle = []
    status = EXIT_OK
    texts = []
    for tag in tags:
        trace = run_case(tag, seed=args.seed)
        certs = verify_certificates(trace, n_points=args.points)
        doc = trace.to_dict()
        doc["certificates"] = [
            {"step": c.step, "max_residual": c.max_residual, "passed": c.passed} for c in certs
        ]
        bundle.append(doc)
        text = trace.to_text()
        cert_fail = [c.step for c in certs if not c.passed]
        text += "\ncertificates: " + ("all passed" if not cert_fail else "FAILED " + ", ".join(cert_fail))
        text += f" ({len(certs)} steps x {args.points} points)"
        texts.append(text)
        if cert_fail:
            _err(f"case {tag}: certificate failure at {', '.join(cert_fail)}")
            status = EXIT_VERIFY
        full = trace.full_mismatches()
        if full:
            _err(f"case {tag}: printed coefficients not reproduced: {', '.join(full)}")
            status = EXIT_VERIFY
        lead = trace.leading_mismatches()
        if lead:
            print(f"warning: case {tag}: printed leading terms differ: {', '.join(lead)}", file=sys.stderr)
    if args.json:
        print(json.dumps({"seed": args.seed, "traces": bundle}, sort_keys=True, indent=2))
    else:
        print("\n\n".join(texts))
    return status


# -- scan ---------------------------------------------------------------------------

def _range(text: str) -> np.ndarray:
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise UsageError(f"range must look like start:stop:count, got {text!r}") from None
    if n < 1:
        raise UsageError("empty range")
    if n == 1:
        return np.array([a])
    return np.linspace(a, b, n)


def cmd_scan(args) -> int:
    if not args.family.startswith("catalog:"):
        raise UsageError("scan needs a catalog family, e.g. catalog:torus")
    values = _range(args.range)
    n_u, n_v = _grid(args.grid)
    base, _, query = args.family.partition("?")
    rows = []
    for val in values:
        q = "&".join(x for x in (query, f"{args.param}={report.fmt(val)}") if x)
        surface = parse_catalog_uri(f"{base}?{q}")
        grid = finitetype.sample_grid(surface, n_u, n_v)
        fit = finitetype.fit_matrix(surface, grid)
        cls = finitetype.classify(fit, tol=args.tol)
        rows.append({
            args.param: report.fmt(val),
            "rms_residual": report.fmt(fit.rms_residual),
            "lambda": report.fmt(cls.lam),
            "mu": report.fmt(cls.mu),
            "case": cls.case_tag,
        })
    sys.stdout.write(report.rows_to_csv(rows))
    return EXIT_OK


# -- entry point -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="secondform", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="fit and classify Delta^II x = A x for one surface")
    a.add_argument("--surface", required=True, help="surface file or catalog:name?k=v")
    a.add_argument("--grid", default="20x20", help="NxM sample grid (default 20x20)")
    fmt = a.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    a.add_argument("--tol", type=float, default=finitetype.CLASSIFY_TOL, help="classification tolerance")
    a.set_defaults(func=cmd_analyze)

    p = sub.add_parser("prove", help="replay the symbolic case analysis")
    p.add_argument("--case", default="all", help="I, II, III, IV, V or all")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", choices=("derived", "published"), default="derived",
                   help="case V: derive the cubic, or start from the printed one")
    p.add_argument("--points", type=int, default=50, help="random relation points per certificate")
    p.set_defaults(func=cmd_prove)

    s = sub.add_parser("scan", help="sweep one catalog parameter and report the fit")
    s.add_argument("--family", required=True, help="catalog:name[?fixed=params]")
    s.add_argument("--param", required=True)
    s.add_argument("--range", required=True, help="start:stop:count")
    s.add_argument("--grid", default="12x12")
    s.add_argument("--tol", type=float, default=finitetype.CLASSIFY_TOL)
    s.set_defaults(func=cmd_scan)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return _run_guarded(args.func, args)


if __name__ == "__main__":
    sys.exit(main())
