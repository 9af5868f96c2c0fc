"""The ten end-to-end acceptance checks, shared by the CLI and the test suite.

Each check returns a :class:`CheckResult` listing sub-checks with their
expected values, computed values and verdicts.  Wall-clock runtimes are
reported separately so that result JSON stays byte-identical across runs.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable

import numpy as np

from . import catalog, lasserre, sdp
from .faces2d import SetDescription2D, face_of_point_2d, is_exposed_2d, line_equation
from .linmat import (
    LinMatPoly,
    char_poly_coeffs,
    charpoly_member,
    exposing_functional,
    face_of_point,
    spectrahedron_member,
)
from .poly import MPoly, homogenize
from .rigidconv import (
    check_rz,
    default_directions,
    exposing_tangent,
    hyperbolicity_cone_member,
    mult,
    renegar_derivative,
)
from .sampling import random_rational, rational_grid, sample_set


@dataclass
class SubCheck:
    name: str
    expected: str
    computed: str
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "computed": self.computed, "pass": self.passed}


@dataclass
class CheckResult:
    key: str
    title: str
    provenance: str
    budget_s: float
    subchecks: list[SubCheck] = field(default_factory=list)
    runtime_s: float = 0.0
    stalled: bool = False

    def add(self, name: str, expected, computed, passed: bool) -> bool:
        self.subchecks.append(SubCheck(name, str(expected), str(computed), bool(passed)))
        return passed

    @property
    def within_budget(self) -> bool:
        return self.runtime_s <= self.budget_s

    @property
    def passed(self) -> bool:
        return bool(self.subchecks) and all(s.passed for s in self.subchecks) and self.within_budget

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "provenance": self.provenance,
            "pass": self.passed,
            "within_budget": self.within_budget,
            "budget_s": self.budget_s,
            "stalled": self.stalled,
            "subchecks": [s.to_json() for s in self.subchecks],
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        failed = [s.name for s in self.subchecks if not s.passed]
        extra = f" (failed: {', '.join(failed)})" if failed else ""
        if not self.within_budget:
            extra += f" (over budget: {self.runtime_s:.1f}s > {self.budget_s:.0f}s)"
        return f"[{status}] {self.key} {self.title} [{self.runtime_s:.2f}s]{extra}"


def frozen_fixtures() -> dict:
    text = resources.files("spectrakit").joinpath("data/frozen.json").read_text(encoding="utf-8")
    return json.loads(text)


def _timed(fn: Callable[[CheckResult], None], result: CheckResult) -> CheckResult:
    start = time.perf_counter()
    fn(result)
    result.runtime_s = time.perf_counter() - start
    return result


def _eq(a: MPoly, text: str) -> bool:
    return a == catalog.poly(text)


# ---------------------------------------------------------------------------
# 1. characteristic polynomial coefficients


def check_charpoly() -> CheckResult:
    def body(r: CheckResult):
        c = char_poly_coeffs(catalog.CUBIC_PENCIL).c
        for i, text in enumerate((catalog.CUBIC, catalog.CUBIC_C1, catalog.CUBIC_C2)):
            want = catalog.poly(text)
            r.add(f"c{i}", want, c[i], c[i] == want)

    return _timed(body, CheckResult("c1", "char-poly coefficients of the cubic pencil", "stated", 1.0))


# ---------------------------------------------------------------------------
# 2. Renegar chain, multiplicities, exposing tangent

RENEGAR_STATED = {1: "-t1^2 - t2^2 - 2*t1 + 3", 2: "6 - t1"}


def cubic_boundary_sample(count: int = 20) -> list[tuple[Fraction, Fraction]]:
    """Rational points on the oval of the cubic, away from the node (1, 0)."""
    rs = sorted({Fraction(k, 16) for k in range(-22, 23)}, key=lambda r: (abs(r), r))
    pts = [catalog.cubic_boundary_point(r) for r in rs]
    pts = [x for x in pts if x != (1, 0)]
    return pts[:: max(1, len(pts) // count)][:count]


def check_renegar() -> CheckResult:
    def body(r: CheckResult):
        p = catalog.poly(catalog.CUBIC)
        for k, text in RENEGAR_STATED.items():
            got = renegar_derivative(p, k)
            r.add(f"p^({k})", catalog.poly(text), got, _eq(got, text))
        m = mult(p, (1, 0))
        r.add("mult(1,0)", 2, m, m == 2)
        pts = cubic_boundary_sample(20)
        mults = [mult(p, x) for x in pts]
        on_curve = all(p.eval(x) == 0 and 1 - x[0] > 0 for x in pts)
        r.add("mult on 20 boundary points", "all 1", f"{sorted(set(mults))} over {len(pts)} points",
              on_curve and len(pts) == 20 and all(v == 1 for v in mults))
        tangent = exposing_tangent(p, (1, 0))
        text = line_equation(tangent.linear_form())
        r.add("exposing tangent at (1,0)", "{t1 = 1}", text, text == "{t1 = 1}")

    return _timed(body, CheckResult("c2", "Renegar chain regression", "stated", 1.0))


# ---------------------------------------------------------------------------
# 3. four descriptions of the same set on a grid


def check_descriptions(per_axis: int = 201) -> CheckResult:
    def body(r: CheckResult):
        A = catalog.CUBIC_PENCIL
        coeffs = char_poly_coeffs(A)
        gens = catalog.polys(catalog.CUBIC_SET_GENERATORS)
        grid = rational_grid(catalog.CUBIC_SET_BBOX, per_axis)
        names = ("S(c0,-c1,c2)", "S(c0,-c1)", "S(p,1-t1)")
        mismatches = {name: 0 for name in names}
        witness: dict = {}
        inside = 0
        for x in grid:
            a = spectrahedron_member(A, x)
            others = (
                charpoly_member(coeffs, x),
                charpoly_member(coeffs, x, upto=2),
                all(g.eval(x) >= 0 for g in gens),
            )
            for name, b in zip(names, others):
                if a != b:
                    mismatches[name] += 1
                    witness.setdefault(name, x)
            inside += a
        for name in names:
            w = witness.get(name)
            detail = f"{mismatches[name]} mismatches"
            if w is not None:
                detail += f", first at ({w[0]}, {w[1]})"
            r.add(f"S(A) = {name}", "0 mismatches", detail, mismatches[name] == 0)
        r.add("grid points inside", "> 0 and < total", f"{inside} of {len(grid)}", 0 < inside < len(grid))

    return _timed(body, CheckResult("c3", "description equivalence on a 201x201 grid", "stated", 60.0))


# ---------------------------------------------------------------------------
# 4. real-zero property and hyperbolicity cone


def check_rz_and_cone(directions: int = 256, points: int = 500, seed: int = 4) -> CheckResult:
    def body(r: CheckResult):
        p = catalog.poly(catalog.CUBIC)
        rep = check_rz(p, (0, 0), default_directions(2, directions))
        r.add("check_rz over directions", f"true on {directions}",
              f"{rep.overall} ({sum(rep.verdicts)}/{len(rep.verdicts)})",
              rep.overall and len(rep.verdicts) == directions)
        P = homogenize(p, 3)
        gens = catalog.polys(catalog.CUBIC_SET_GENERATORS)
        inside = sample_set(gens, catalog.CUBIC_SET_BBOX, points // 2, seed=seed)
        rng = np.random.default_rng(seed)
        anywhere = [
            tuple(random_rational(rng, lo, hi, 64) for lo, hi in catalog.CUBIC_SET_BBOX)
            for _ in range(points - len(inside))
        ]
        disagreements = 0
        for x in inside + anywhere:
            cone = hyperbolicity_cone_member(P, (0, 0, 1), (x[0], x[1], 1))
            planar = all(g.eval(x) >= 0 for g in gens)
            disagreements += cone != planar
        r.add("cone vs planar membership", f"agree on {points}", f"{disagreements} disagreements",
              disagreements == 0 and len(inside) + len(anywhere) == points)

    return _timed(body, CheckResult("c4", "RZ verification and hyperbolicity cone", "stated", 30.0))


# ---------------------------------------------------------------------------
# 5. quadratic-module certificates for the tangent family

QM_VALUES = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


def tangent_witness(a: Fraction) -> list[list[tuple]]:
    """sigma_0 = 2a (t1 - a)^2, sigma for t2 - t1^3 = 1, sigma for t1 = (t1 - a)^2."""
    t1 = MPoly.var(2, 0)
    one = MPoly.constant(2, 1)
    return [[(2 * a, t1 - a)], [(1, one)], [(1, t1 - a)], []]


def check_qm_certificates(config: sdp.SolverConfig | None = None, log: list | None = None) -> CheckResult:
    def body(r: CheckResult):
        gens = lasserre.Generators.parse(list(catalog.CUSP_TRIPLE_GENERATORS), 2)
        with lasserre.recording() as rec:
            for a in QM_VALUES:
                ell = catalog.tangent_family(a)
                res = lasserre.qm_member(gens, 3, ell, config)
                ok = res.verdict is lasserre.Verdict.CERTIFIED and res.certificate.residual <= 1e-6
                detail = res.verdict.value
                if res.verdict is lasserre.Verdict.CERTIFIED:
                    detail += f", residual {res.certificate.residual:.2e}"
                if res.verdict is lasserre.Verdict.UNDECIDED:
                    r.stalled = True
                r.add(f"qm_member a={a}", "CERTIFIED, residual <= 1e-6", detail, ok)
                exact_ok = lasserre.verify_qm_certificate_exact(gens, 3, ell, tangent_witness(a))
                r.add(f"exact witness a={a}", True, exact_ok, exact_ok)
        if log is not None:
            log.extend(rec)

    return _timed(body, CheckResult("c5", "quadratic-module certificates", "stated", 30.0))


# ---------------------------------------------------------------------------
# 6. exposedness in the plane


def check_exposedness() -> CheckResult:
    def body(r: CheckResult):
        corner = SetDescription2D.parse(catalog.CORNER_SET_GENERATORS, catalog.CORNER_SET_INTERIOR,
                                        catalog.CORNER_SET_BBOX)
        face = face_of_point_2d(corner, (0, 0))
        rep = is_exposed_2d(corner, face)
        r.add("corner face", "point", face.kind, face.kind == "point")
        r.add("corner exposed", False, rep.exposed, rep.exposed is False)
        single = rep.support_cone is not None and rep.support_cone.is_single
        normal = rep.support_cone.normals[0] if single else None
        line_ok = single and abs(normal[0]) < 1e-12 and abs(normal[1] - 1) < 1e-12
        r.add("corner support cone", "single line {t2 = 0}",
              "none" if rep.support_cone is None else f"{len(rep.support_cone.angles)} normal(s), first {normal}",
              line_ok)
        r.add("corner contact set", "segment", None if rep.contact is None else rep.contact.kind,
              rep.contact is not None and rep.contact.kind == "segment")
        cubic = SetDescription2D.parse(catalog.CUBIC_SET_GENERATORS, catalog.CUBIC_SET_INTERIOR,
                                       catalog.CUBIC_SET_BBOX)
        face = face_of_point_2d(cubic, (1, 0))
        rep = is_exposed_2d(cubic, face)
        r.add("node face", "point", face.kind, face.kind == "point")
        r.add("node exposed", "exposed by {t1 = 1}", f"{rep.exposed} {rep.line_text()}",
              rep.exposed and rep.line_text() == "{t1 = 1}")

    return _timed(body, CheckResult("c6", "non-exposedness detection", "stated", 60.0))


# ---------------------------------------------------------------------------
# 7. halving probe on the set with the non-exposed corner


def check_halving_probe(config: sdp.SolverConfig | None = None, log: list | None = None) -> CheckResult:
    def body(r: CheckResult):
        gens = lasserre.Generators.parse(list(catalog.CORNER_SET_GENERATORS), 2)
        with lasserre.recording() as rec:
            rep = lasserre.halving_probe(gens, 3, config=config)
        if log is not None:
            log.extend(rec)
        if any(res.verdict is lasserre.Verdict.UNDECIDED for _, res in rep.attempts):
            r.stalled = True
        found = rep.a_star is not None and rep.a_star >= Fraction(1, 2**20)
        r.add("REFUTED for some a >= 2^-20", "some a*", rep.a_star, found)
        if not found:
            return
        cert = rep.refutation
        ell = catalog.tangent_family(rep.a_star)
        y = cert.moments
        l1 = float(y.values[0])
        eigs = lasserre.localizing_min_eigs(gens, 3, y)
        value = float(y.apply(ell))
        r.add("L(1) = 1", 1.0, l1, abs(l1 - 1) <= 1e-12)
        r.add("localizing matrices PSD within 1e-7", ">= -1e-7", f"min {min(eigs):.3e}", min(eigs) >= -1e-7)
        r.add("L(ell_a*) <= -1e-6", "<= -1e-6", f"{value:.6g}", value <= -1e-6)
        r.add("independent verification", True, lasserre.verify_dual_certificate(cert, gens, 3, ell),
              lasserre.verify_dual_certificate(cert, gens, 3, ell))
        frozen = Fraction(frozen_fixtures()["corner_set_d3"]["a_star"])
        r.add("matches frozen a*", frozen, rep.a_star, rep.a_star == frozen)

    return _timed(body, CheckResult("c7", "exactness probe refutes on the non-exposed example", "derived", 600.0))


# ---------------------------------------------------------------------------
# 8. relaxation contains the set; nesting across degrees

RELAXATION_SETS = (
    ("cubic set", catalog.CUBIC_SET_GENERATORS, catalog.CUBIC_SET_BBOX),
    ("corner set", catalog.CORNER_SET_GENERATORS, catalog.CORNER_SET_BBOX),
)


def check_relaxation(config: sdp.SolverConfig | None = None, log: list | None = None, samples: int = 100,
                     seed: int = 8) -> CheckResult:
    def body(r: CheckResult):
        with lasserre.recording() as rec:
            for name, texts, bbox in RELAXATION_SETS:
                gens = lasserre.Generators.parse(list(texts), 2)
                pts = sample_set(gens.polys, bbox, samples, seed=seed)
                verdicts = [lasserre.relaxation_member(gens, 3, x, config, shortcut=False) for x in pts]
                n_in = sum(v.verdict is lasserre.Verdict.IN for v in verdicts)
                n_out = sum(v.verdict is lasserre.Verdict.OUT for v in verdicts)
                verified = sum(lasserre.verify_relaxation_result(v, gens, 3) for v in verdicts)
                if n_in + n_out < len(pts):
                    r.stalled = True
                r.add(f"{name}: points of S", f"IN for {samples}", f"{n_in} IN, {n_out} OUT, {verified} verified",
                      n_in == samples and n_out == 0 and verified == samples)
                grid = rational_grid(bbox, 5)
                rep = lasserre.nesting_check(gens, 3, grid, config)
                r.add(f"{name}: nesting d=4 -> d=3", "0 violations", f"{rep.violations} of {len(grid)}",
                      rep.violations == 0 and len(grid) == 25)
        if log is not None:
            log.extend(rec)

    return _timed(body, CheckResult("c8", "relaxation sanity", "stated", 600.0))


# ---------------------------------------------------------------------------
# 9. faces of random spectrahedra are exposed


def _positive_definite(M) -> bool:
    """All leading principal minors positive (exact)."""
    k = len(M)
    for size in range(1, k + 1):
        sub = [[Fraction(M[i][j]) for j in range(size)] for i in range(size)]
        if _det(sub) <= 0:
            return False
    return True


def _det(m) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def planted_pencil(rng: np.random.Generator, k: int = 3) -> tuple[LinMatPoly, tuple[Fraction, Fraction]]:
    """Random integer pencil with A0 > 0 and a rational boundary point x* (A(x*) singular PSD)."""
    while True:
        x = (Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4))),
             Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4))))
        if x == (0, 0):
            continue
        rank = int(rng.integers(1, k))
        B = [[Fraction(0)] * k for _ in range(k)]
        for _ in range(rank):
            w = [int(v) for v in rng.integers(-2, 3, size=k)]
            for i in range(k):
                for j in range(k):
                    B[i][j] += w[i] * w[j]
        mats = []
        for _ in range(2):
            R = rng.integers(-2, 3, size=(k, k))
            mats.append([[Fraction(int(R[min(i, j), max(i, j)])) for j in range(k)] for i in range(k)])
        A0 = [[B[i][j] - x[0] * mats[0][i][j] - x[1] * mats[1][i][j] for j in range(k)] for i in range(k)]
        if _det(B) != 0 or not _positive_definite(A0):
            continue
        if all(all(v == 0 for row in m for v in row) for m in mats):
            continue
        return LinMatPoly((A0, mats[0], mats[1])), x


def _spectrahedron_samples(A: LinMatPoly, x: tuple, count: int, rng) -> list[tuple[Fraction, Fraction]]:
    radius = 2 * max(1, float(abs(x[0])), float(abs(x[1]))) + 1
    out = [(Fraction(0), Fraction(0))]
    tries = 0
    while len(out) < count and tries < 200 * count:
        tries += 1
        y = tuple(Fraction(int(rng.integers(-64 * radius, 64 * radius + 1)), 64) for _ in range(2))
        if spectrahedron_member(A, y):
            out.append(y)
    return out


def check_ramana_goldman(pencils: int = 50, samples: int = 1000, seed: int = 9, tol: float = 1e-6) -> CheckResult:
    def body(r: CheckResult):
        rng = np.random.default_rng(seed)
        negative = mismatched = missing_face = built = 0
        sample_counts = []
        for _ in range(pencils):
            A, xstar = planted_pencil(rng)
            face = face_of_point(A, xstar)
            ell = exposing_functional(face, A)
            pts = _spectrahedron_samples(A, xstar, samples, rng)
            sample_counts.append(len(pts))
            # face points: x* and nearby rational points of the hull that stay in S
            face_pts = [xstar]
            for d in face.hull_directions:
                for t in (Fraction(1, 8), Fraction(-1, 8), Fraction(1, 64), Fraction(-1, 64)):
                    y = tuple(a + t * b for a, b in zip(xstar, d))
                    if spectrahedron_member(A, y):
                        face_pts.append(y)
            built += 1
            grad = float(np.hypot(float(ell.coeff((1, 0))), float(ell.coeff((0, 1)))))
            for y in pts:
                v = ell.eval(y)
                if v < 0:
                    negative += 1
                elif abs(float(v)) <= tol * grad and not face.in_hull(y):
                    mismatched += 1
            for y in face_pts:
                if ell.eval(y) != 0 or not spectrahedron_member(A, y):
                    missing_face += 1
        r.add("pencils", pencils, built, built == pencils)
        r.add("S-samples per pencil", samples, f"min {min(sample_counts)}", min(sample_counts) >= samples)
        r.add("exposing functional >= 0 on samples", 0, f"{negative} negative values", negative == 0)
        r.add("sampled zero set inside the face", 0, f"{mismatched} samples off the face", mismatched == 0)
        r.add("face points in the zero set", 0, f"{missing_face} misses", missing_face == 0)

    return _timed(body, CheckResult("c9", "faces of random spectrahedra are exposed", "stated", 300.0))


# ---------------------------------------------------------------------------
# 10. solver honesty


def regression_instances() -> list[tuple[str, sdp.SDPProblem, str]]:
    """20 feasible and 20 infeasible moment problems built from the example sets."""
    out = []
    trip = lasserre.Generators.parse(list(catalog.CUSP_TRIPLE_GENERATORS), 2)
    corner = lasserre.Generators.parse(list(catalog.CORNER_SET_GENERATORS), 2)
    cubic = lasserre.Generators.parse(list(catalog.CUBIC_SET_GENERATORS), 2)
    for a in QM_VALUES:
        prob, _ = lasserre.moment_problem(trip, 3, objective=catalog.tangent_family(a), label=f"qm triple a={a}")
        out.append((prob.label, prob, "FEASIBLE"))
    for a in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)):
        prob, _ = lasserre.moment_problem(corner, 3, objective=catalog.tangent_family(a), label=f"qm corner a={a}")
        out.append((prob.label, prob, "FEASIBLE"))
    inside_corner = [(Fraction(-1, 2), Fraction(1, 2)), (Fraction(-1, 4), Fraction(1, 8)), (Fraction(1, 2), Fraction(3, 4)),
                     (Fraction(-3, 4), Fraction(1, 4)), (Fraction(0), Fraction(1, 2)), (Fraction(1, 4), Fraction(1, 2))]
    inside_cubic = [(Fraction(0), Fraction(0)), (Fraction(1, 2), Fraction(1, 4)), (Fraction(-1, 2), Fraction(-1, 4)),
                    (Fraction(0), Fraction(1)), (Fraction(-1, 2), Fraction(1, 2)), (Fraction(3, 4), Fraction(-1, 8))]
    for gens, pts, name in ((corner, inside_corner, "corner"), (cubic, inside_cubic, "cubic")):
        for x in pts:
            prob, _ = lasserre.moment_problem(gens, 3, point=[float(v) for v in x], label=f"relax {name} x={x}")
            out.append((prob.label, prob, "FEASIBLE"))
    outside_corner = [(2, 2), (-2, 0), (0, -1), (1, 2), (-1, -1), (3 / 2, 0), (0, 3 / 2), (-3 / 2, 3 / 2), (5, 5), (1 / 2, -1 / 2)]
    outside_cubic = [(2, 0), (-2, 0), (0, 2), (0, -2), (3, 3), (-3 / 2, 1), (1 / 2, 3 / 2), (6, 2), (-4, -2), (1 / 2, -3 / 2)]
    for gens, pts, name in ((corner, outside_corner, "corner"), (cubic, outside_cubic, "cubic")):
        for x in pts:
            prob, _ = lasserre.moment_problem(gens, 3, point=[float(v) for v in x], label=f"relax {name} x={x}")
            out.append((prob.label, prob, "INFEASIBLE"))
    return out


def check_solver_honesty(config: sdp.SolverConfig | None = None, generated: list | None = None) -> CheckResult:
    def body(r: CheckResult):
        cfg = config or sdp.SolverConfig()
        insts = regression_instances()
        n_feas = sum(e == "FEASIBLE" for _, _, e in insts)
        r.add("regression set size", "20 feasible + 20 infeasible", f"{n_feas} + {len(insts) - n_feas}",
              n_feas == 20 and len(insts) == 40)
        wrong = unverified = 0
        details = []
        for label, prob, expected in insts:
            sol = sdp.solve(prob, cfg)
            if sol.status.value != expected:
                wrong += 1
                details.append(f"{label}: {sol.status.value}")
            if not sdp.verify_solution(prob, sol, cfg).ok:
                unverified += 1
        r.add("regression verdicts", "as labelled", "; ".join(details) or "all as labelled", wrong == 0)
        r.add("regression certificates verified", 0, f"{unverified} unverifiable", unverified == 0)
        if generated is not None:
            bad = sum(
                1 for prob, sol in generated
                if sol.status is sdp.Status.STALLED or not sdp.verify_solution(prob, sol, cfg).ok
            )
            r.add("verdicts from checks 5-8 verified", 0, f"{bad} of {len(generated)} unverifiable", bad == 0)

    return _timed(body, CheckResult("c10", "solver honesty", "derived", 300.0))


# ---------------------------------------------------------------------------

SDP_CHECKS = ("c5", "c7", "c8", "c10")


def run_all(config: sdp.SolverConfig | None = None, skip: set[str] = frozenset(), progress=None) -> list[CheckResult]:
    """Run every acceptance check not in `skip` (keys like 'c3' or the group 'sdp')."""
    skip = set(skip)
    if "sdp" in skip:
        skip |= set(SDP_CHECKS)
    generated: list = []
    plan = [
        ("c1", lambda: check_charpoly()),
        ("c2", lambda: check_renegar()),
        ("c3", lambda: check_descriptions()),
        ("c4", lambda: check_rz_and_cone()),
        ("c5", lambda: check_qm_certificates(config, generated)),
        ("c6", lambda: check_exposedness()),
        ("c7", lambda: check_halving_probe(config, generated)),
        ("c8", lambda: check_relaxation(config, generated)),
        ("c9", lambda: check_ramana_goldman()),
        ("c10", lambda: check_solver_honesty(config, generated)),
    ]
    out = []
    for key, fn in plan:
        if key in skip:
            continue
        res = fn()
        out.append(res)
        if progress is not None:
            progress(res)
    return out
