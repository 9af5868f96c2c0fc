"""Command-line front end.

Exit codes: 0 success, 2 a mathematical check failed, 3 bad input,
4 the solver stalled on a required check.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import lasserre, acceptance, sdp
from .faces2d import SetDescription2D, _primitive, face_of_point_2d, is_exposed_2d, line_equation
from .figures import write_figures
from .linmat import (
    DegenerateFaceError,
    LinMatPoly,
    NotInSpectrahedronError,
    char_poly_coeffs,
    exposing_functional,
    face_of_point,
    spectrahedron_member,
)
from .parse import PolyParseError, parse_poly, parse_rational_list, variable_count
from .poly import default_names, format_poly, homogenize
from .rigidconv import (
    basic_closed_description,
    check_rz,
    default_directions,
    exposing_tangent,
    hyperbolicity_cone_member,
    mult,
    mult_homogeneous,
    renegar_chain,
    renegar_derivative,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_STALL = 0, 2, 3, 4
SCHEMA = 1


class InputError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors are input errors, not failed checks."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(report: dict, out: str | None):
    text = _dump(report)
    print(text)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")


def _solver_config(args) -> sdp.SolverConfig:
    try:
        return sdp.SolverConfig(feas_tol=args.feas_tol, refute_tol=args.refute_tol, max_iter=args.max_iter)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def config_warnings(args) -> list[str]:
    out = []
    if args.feas_tol > 1e-3:
        out.append(f"feas-tol {args.feas_tol:g} is far above the default 1e-7; FEASIBLE verdicts are not meaningful")
    if args.refute_tol > 1e-2:
        out.append(f"refute-tol {args.refute_tol:g} is far above the default 1e-6")
    if args.max_iter < 20:
        out.append(f"max-iter {args.max_iter} is likely too small for convergence")
    for w in out:
        print(f"warning: {w}", file=sys.stderr)
    return out


def _poly(text: str, n: int | None = None):
    return parse_poly(text, n)


def _vector(text: str) -> list[Fraction]:
    try:
        return parse_rational_list(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad vector {text!r}: {exc}") from None


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


# ---------------------------------------------------------------------------
# commands


def cmd_rz(args) -> int:
    e = _vector(args.e) if args.e else None
    p = _poly(args.poly, len(e) if e else None)
    e = e or [Fraction(0)] * p.n
    if len(e) != p.n:
        raise InputError(f"--e has {len(e)} coordinates, polynomial has {p.n} variables")
    report = check_rz(p, e, default_directions(p.n, args.directions)).to_json()
    _emit({"schema": SCHEMA, "command": "rz", **report}, args.out)
    return EXIT_OK


def cmd_renegar(args) -> int:
    p = _poly(args.poly)
    if args.k is not None:
        out = {"k": args.k, "derivative": format_poly(renegar_derivative(p, args.k))}
    else:
        out = {"chain": [format_poly(q) for q in renegar_chain(p)]}
        if args.describe:
            out["description"] = [format_poly(q) for q in basic_closed_description(p)]
    _emit({"schema": SCHEMA, "command": "renegar", "p": format_poly(p), **out}, args.out)
    return EXIT_OK


def cmd_mult(args) -> int:
    x = _vector(args.x)
    p = _poly(args.poly, len(x))
    if len(x) != p.n:
        raise InputError(f"--x has {len(x)} coordinates, polynomial has {p.n} variables")
    out = {"x": [str(v) for v in x], "mult": mult(p, x), "mult_homogeneous": mult_homogeneous(p, x)}
    if args.tangent and out["mult"] > 0:
        try:
            form = _primitive(exposing_tangent(p, x).linear_form())
            out["tangent"] = format_poly(form)
            out["tangent_line"] = line_equation(form)
        except ValueError as exc:
            out["tangent_error"] = str(exc)
    _emit({"schema": SCHEMA, "command": "mult", "p": format_poly(p), **out}, args.out)
    return EXIT_OK


def cmd_pencil(args) -> int:
    try:
        A = LinMatPoly.from_json(_load_json(args.file))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.file}: {exc}") from None
    out: dict = {"schema": SCHEMA, "command": f"pencil {args.action}", "k": A.k, "n": A.n}
    if args.action == "charpoly":
        c = char_poly_coeffs(A)
        out["coefficients"] = [format_poly(q) for q in c.full()]
        out["convention"] = "det(A(t) - s I) = sum_i c_i s^i"
    else:
        if not args.x:
            raise InputError("--x is required")
        x = _vector(args.x)
        if len(x) != A.n:
            raise InputError(f"--x has {len(x)} coordinates, pencil has {A.n} variables")
        if args.action == "member":
            out["member"] = spectrahedron_member(A, x)
        else:
            try:
                face = face_of_point(A, x)
            except NotInSpectrahedronError as exc:
                raise InputError(str(exc)) from None
            out["face"] = face.to_json()
            try:
                out["exposing_functional"] = format_poly(exposing_functional(face, A))
            except DegenerateFaceError as exc:
                out["exposing_functional"] = None
                out["note"] = str(exc)
    _emit(out, args.out)
    return EXIT_OK


def cmd_hypcone(args) -> int:
    x = _vector(args.x)
    if len(x) < 2:
        raise InputError("--x needs at least two coordinates (t-part and u)")
    _, has_u = variable_count(args.poly)
    P = parse_poly(args.poly, len(x) - 1)
    if not has_u:
        P = homogenize(P, P.degree())
    e = _vector(args.e) if args.e else [Fraction(0)] * (P.n - 1) + [Fraction(1)]
    if len(e) != P.n:
        raise InputError(f"--e needs {P.n} coordinates")
    member = hyperbolicity_cone_member(P, e, x)
    names = default_names(P.n - 1) + ["u"]
    _emit({"schema": SCHEMA, "command": "hypcone", "P": format_poly(P, names), "e": [str(v) for v in e],
           "x": [str(v) for v in x], "member": member}, args.out)
    return EXIT_OK


def cmd_lasserre(args) -> int:
    cfg = _solver_config(args)
    data = _load_json(args.problem)
    warnings = config_warnings(args)
    try:
        if args.sub == "probe":
            report = _probe(data, cfg)
            stalled = any(a["verdict"] == "UNDECIDED" for a in report["attempts"])
        else:
            kind = "qm" if args.sub == "qm-member" else "point"
            queries = [q for q in data.get("queries", []) if q.get("type") == kind]
            if not queries:
                raise InputError(f"no {kind!r} queries in {args.problem}")
            report = lasserre.run_problem({**data, "queries": queries}, cfg, shortcut=not args.no_shortcut)
            stalled = any(r["verdict"] == "UNDECIDED" for r in report["results"])
    except (lasserre.ProblemFileError, lasserre.DegreeError, KeyError, TypeError) as exc:
        raise InputError(str(exc)) from None
    _emit({"schema": SCHEMA, "command": f"lasserre {args.sub}", "warnings": warnings, **report}, args.out)
    return EXIT_STALL if stalled else EXIT_OK


def _probe(data: dict, cfg) -> dict:
    for key in ("generators", "d"):
        if key not in data:
            raise lasserre.ProblemFileError(f"missing key {key!r}")
    gens = lasserre.Generators.parse(data["generators"], data.get("n"))
    start = Fraction(str(data.get("start", "1/2")))
    floor = Fraction(str(data.get("floor", f"1/{2**20}")))
    rep = lasserre.halving_probe(gens, int(data["d"]), start, floor, config=cfg)
    return {"generators": gens.to_json(), **rep.to_json()}


def cmd_faces2d(args) -> int:
    data = _load_json(args.set)
    try:
        S = SetDescription2D.from_json(data)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{args.set}: {exc}") from None
    x = _vector(args.x)
    if len(x) != 2:
        raise InputError("--x needs two coordinates")
    if not S.contains_exact(x):
        raise InputError(f"({args.x}) is not in the set")
    face = face_of_point_2d(S, x)
    rep = is_exposed_2d(S, face, rays=args.rays, normals=args.normals, contact_tol=args.contact_tol)
    _emit({"schema": SCHEMA, "command": "faces2d", **rep.to_json()}, args.out)
    return EXIT_OK


def cmd_fig(args) -> int:
    out = Path(args.out or "figures")
    paths = write_figures(out)
    print(_dump({"schema": SCHEMA, "command": "fig", "figures": [p.name for p in paths]}))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    cfg = _solver_config(args)
    warnings = config_warnings(args)
    skip = {s.strip() for s in (args.skip or "").split(",") if s.strip()}
    unknown = skip - {"sdp", "figures"} - {f"c{i}" for i in range(1, 11)}
    if unknown:
        raise InputError(f"unknown --skip entries: {', '.join(sorted(unknown))}")
    out = Path(args.out or "report")
    out.mkdir(parents=True, exist_ok=True)

    def progress(res):
        print(res.line(), file=sys.stderr)

    results = acceptance.run_all(cfg, skip, progress)
    checks = {r.key: r.to_json() for r in sorted(results, key=lambda r: r.key)}
    overall = all(r.passed for r in results)
    report = {
        "schema": SCHEMA,
        "command": "reproduce-paper",
        "overall": overall,
        "partial": bool(skip),
        "skipped": sorted(skip),
        "warnings": warnings,
        "config": {"feas_tol": cfg.feas_tol, "refute_tol": cfg.refute_tol, "max_iter": cfg.max_iter},
        "checks": checks,
    }
    (out / "report.json").write_text(_dump(report) + "\n", encoding="utf-8")
    (out / "timings.json").write_text(_dump({r.key: round(r.runtime_s, 3) for r in results}) + "\n",
                                      encoding="utf-8")
    if "figures" not in skip:
        write_figures(out)
    print(_dump({"overall": overall, "report": str(out / "report.json"),
                 "failed": [r.key for r in results if not r.passed]}))
    if any(r.stalled and not r.passed for r in results):
        return EXIT_STALL
    return EXIT_OK if overall else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (JSON) or directory (reproduce-paper, fig)")
    common.add_argument("--feas-tol", type=float, default=1e-7)
    common.add_argument("--refute-tol", type=float, default=1e-6)
    common.add_argument("--max-iter", type=int, default=200)
    common.add_argument("--seed", type=int, default=0)

    parser = _ArgumentParser(prog="spectrakit", description="Rigidly convex sets, spectrahedra and moment relaxations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("rz", parents=[common], help="real-zero test along sampled directions")
    p.add_argument("--poly", required=True)
    p.add_argument("--e", help="base point, e.g. 0,0 (default: origin)")
    p.add_argument("--directions", type=int, default=64)
    p.set_defaults(func=cmd_rz)

    p = sub.add_parser("renegar", parents=[common], help="Renegar derivatives")
    p.add_argument("--poly", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--describe", action="store_true", help="also print the basic closed description")
    p.set_defaults(func=cmd_renegar)

    p = sub.add_parser("mult", parents=[common], help="boundary multiplicity")
    p.add_argument("--poly", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--tangent", action="store_true", help="also compute the exposing tangent")
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("pencil", parents=[common], help="linear matrix polynomials")
    p.add_argument("action", choices=["charpoly", "member", "face"])
    p.add_argument("--file", required=True, help='pencil JSON {"k", "n", "A"}')
    p.add_argument("--x")
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("hypcone", parents=[common], help="hyperbolicity cone membership")
    p.add_argument("--poly", required=True, help="homogeneous in t1..tn,u, or affine (homogenized)")
    p.add_argument("--e")
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_hypcone)

    p = sub.add_parser("lasserre", parents=[common], help="quadratic modules and moment relaxations")
    p.add_argument("sub", choices=["qm-member", "relax-member", "probe"])
    p.add_argument("problem", help="problem JSON")
    p.add_argument("--no-shortcut", action="store_true", help="always solve the moment SDP for points")
    p.set_defaults(func=cmd_lasserre)

    p = sub.add_parser("faces2d", parents=[common], help="faces and exposedness of planar sets")
    p.add_argument("--set", required=True, help='set JSON {"generators", "interior_point", "bbox"}')
    p.add_argument("--x", required=True)
    p.add_argument("--rays", type=int, default=4096)
    p.add_argument("--normals", type=int, default=4096)
    p.add_argument("--contact-tol", type=float, default=1e-5)
    p.set_defaults(func=cmd_faces2d)

    p = sub.add_parser("reproduce-paper", parents=[common], help="run every acceptance check")
    p.add_argument("--skip", help="comma list: sdp, figures, c1..c10")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("fig", parents=[common], help="write the two SVG figures")
    p.set_defaults(func=cmd_fig)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PolyParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
