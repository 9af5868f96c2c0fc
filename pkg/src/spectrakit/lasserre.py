"""Truncated quadratic modules, moment relaxations and their certificates.

Moment vectors are indexed by all monomials of degree <= d in graded order.
The localizing matrix of g has rows and columns indexed by monomials of degree
<= (d - deg g) // 2, so each sigma_i p_i stays inside degree d.
"""

from __future__ import annotations

import contextlib
import contextvars
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import sdp
from .catalog import tangent_family
from .parse import parse_poly
from .poly import MPoly, as_vector, format_poly, monomials_up_to
from .sampling import in_set, sample_set

CERT_TOL = 1e-6
PSD_TOL = 1e-7


_RECORDER: contextvars.ContextVar[list | None] = contextvars.ContextVar("sdp_recorder", default=None)


@contextlib.contextmanager
def recording():
    """Collect every (problem, solution) pair solved inside the block."""
    log: list = []
    token = _RECORDER.set(log)
    try:
        yield log
    finally:
        _RECORDER.reset(token)


def _solve(problem: sdp.SDPProblem, config: sdp.SolverConfig) -> sdp.SDPSolution:
    sol = sdp.solve(problem, config)
    log = _RECORDER.get()
    if log is not None:
        log.append((problem, sol))
    return sol


class DegreeError(ValueError):
    pass


class Verdict(str, enum.Enum):
    CERTIFIED = "CERTIFIED"
    REFUTED = "REFUTED"
    UNDECIDED = "UNDECIDED"
    IN = "IN"
    OUT = "OUT"


@dataclass(frozen=True)
class Generators:
    n: int
    polys: tuple[MPoly, ...]

    def __post_init__(self):
        for i, p in enumerate(self.polys):
            if p.is_zero():
                raise ValueError(f"generator {i + 1} is the zero polynomial")
            if p.n != self.n:
                raise ValueError(f"generator {i + 1} has {p.n} variables, expected {self.n}")

    @classmethod
    def parse(cls, texts: Sequence[str], n: int | None = None) -> "Generators":
        if n is None:
            n = max([_nvars(t) for t in texts] + [1])
        return cls(n, tuple(parse_poly(t, n) for t in texts))

    @property
    def with_unit(self) -> tuple[MPoly, ...]:
        return (MPoly.constant(self.n, 1),) + self.polys

    def max_degree(self) -> int:
        return max((p.degree() for p in self.polys), default=0)

    def contains(self, x: Sequence) -> bool:
        return in_set(self.polys, as_vector(x))

    def to_json(self) -> list[str]:
        return [str(p) for p in self.polys]


def _nvars(text: str) -> int:
    from .parse import variable_count

    n, _ = variable_count(text)
    return n


def _coerce_gens(gens) -> Generators:
    if isinstance(gens, Generators):
        return gens
    gens = list(gens)
    if gens and isinstance(gens[0], str):
        return Generators.parse(gens)
    if not gens:
        raise ValueError("empty generator list needs an explicit Generators(n, ())")
    return Generators(gens[0].n, tuple(gens))


# ---------------------------------------------------------------------------
# moment vectors and localizing matrices


@dataclass(frozen=True)
class MomentVector:
    n: int
    d: int
    values: tuple  # floats or Fractions, in monomials_up_to(n, d) order

    def __post_init__(self):
        if len(self.values) != math.comb(self.n + self.d, self.d):
            raise ValueError("moment vector has the wrong length")

    @property
    def basis(self):
        return monomials_up_to(self.n, self.d)

    def as_dict(self) -> dict:
        return dict(zip(self.basis, self.values))

    def __getitem__(self, mono) -> object:
        return self.as_dict()[tuple(mono)]

    def apply(self, p: MPoly):
        """L(p) for deg p <= d."""
        table = self.as_dict()
        total = 0
        for mono, c in p.terms.items():
            if mono not in table:
                raise DegreeError(f"polynomial degree exceeds moment degree {self.d}")
            total = total + (c if isinstance(table[mono], Fraction) else float(c)) * table[mono]
        return total

    def truncate(self, d: int) -> "MomentVector":
        if d > self.d:
            raise DegreeError("cannot truncate to a higher degree")
        return MomentVector(self.n, d, self.values[: math.comb(self.n + d, d)])

    def first_moments(self) -> tuple:
        table = self.as_dict()
        return tuple(table[tuple(int(i == j) for i in range(self.n))] for j in range(self.n))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "moments": [[list(m), _num(v)] for m, v in zip(self.basis, self.values)],
        }


def _num(v):
    return str(v) if isinstance(v, Fraction) else float(v)


def point_evaluation_moments(x: Sequence, d: int) -> MomentVector:
    """y_alpha = x^alpha; exact if x holds Fractions or ints, float otherwise."""
    exact = all(isinstance(v, (int, Fraction)) for v in x)
    xs = [Fraction(v) for v in x] if exact else [float(v) for v in x]
    values = []
    for mono in monomials_up_to(len(xs), d):
        v = Fraction(1) if exact else 1.0
        for xi, e in zip(xs, mono):
            v = v * xi**e
        values.append(v)
    return MomentVector(len(xs), d, tuple(values))


def localizing_basis(n: int, g: MPoly, d: int):
    dg = g.degree()
    if dg > d:
        raise DegreeError(f"generator degree {dg} exceeds d = {d}")
    return monomials_up_to(n, (d - dg) // 2)


def localizing_matrix(g: MPoly, d: int, y: MomentVector) -> np.ndarray:
    """Entry (a, b) = sum_c g_c y_{a+b+c}; g = 1 gives the moment matrix."""
    if y.d < d:
        raise DegreeError(f"moments known up to degree {y.d}, need {d}")
    basis = localizing_basis(y.n, g, d)
    table = y.as_dict()
    exact = isinstance(y.values[0], Fraction)
    k = len(basis)
    M = np.zeros((k, k), dtype=object if exact else float)
    for a, ma in enumerate(basis):
        for b in range(a, k):
            mb = basis[b]
            s = Fraction(0) if exact else 0.0
            for mc, c in g.terms.items():
                key = tuple(i + j + l for i, j, l in zip(ma, mb, mc))
                s += (c if exact else float(c)) * table[key]
            M[a, b] = M[b, a] = s
    return M


def _block(g: MPoly, n: int, d: int, index: dict) -> sdp.Block:
    basis = localizing_basis(n, g, d)
    k = len(basis)
    F = np.zeros((len(index), k, k))
    for a, ma in enumerate(basis):
        for b, mb in enumerate(basis):
            for mc, c in g.terms.items():
                F[index[tuple(i + j + l for i, j, l in zip(ma, mb, mc))], a, b] += float(c)
    return sdp.Block(np.zeros((k, k)), F)


def moment_problem(
    gens: Generators,
    d: int,
    objective: MPoly | None = None,
    point: Sequence[float] | None = None,
    label: str = "",
) -> tuple[sdp.SDPProblem, list[int]]:
    """Moment SDP over L(gens)_d with L(1) = 1 (and pi(L) = point, if given).

    Returns the problem and the indices into gens.with_unit of the generators
    that received a block (those of degree <= d).
    """
    basis = monomials_up_to(gens.n, d)
    index = {m: i for i, m in enumerate(basis)}
    used = [i for i, g in enumerate(gens.with_unit) if g.degree() <= d]
    blocks = tuple(_block(gens.with_unit[i], gens.n, d, index) for i in used)
    rows = [np.eye(len(basis))[0]]
    rhs = [1.0]
    if point is not None:
        if len(point) != gens.n:
            raise ValueError(f"point has {len(point)} coordinates, expected {gens.n}")
        for j in range(gens.n):
            rows.append(np.eye(len(basis))[index[tuple(int(i == j) for i in range(gens.n))]])
            rhs.append(float(point[j]))
    obj = None
    if objective is not None:
        obj = np.zeros(len(basis))
        for mono, c in objective.terms.items():
            obj[index[mono]] = float(c)
    return sdp.SDPProblem(len(basis), blocks, np.array(rows), np.array(rhs), obj, label), used


def localizing_min_eigs(gens: Generators, d: int, y: MomentVector) -> tuple[float, ...]:
    out = []
    for g in gens.with_unit:
        if g.degree() <= d:
            M = np.asarray(localizing_matrix(g, d, y), dtype=float)
            out.append(float(np.linalg.eigvalsh(M)[0]))
    return tuple(out)


# ---------------------------------------------------------------------------
# certificates


def _gram_poly(G: np.ndarray, basis, g: MPoly) -> dict:
    """Float coefficients of (v^T G v) * g, computed term by term."""
    out: dict = {}
    for a, ma in enumerate(basis):
        for b, mb in enumerate(basis):
            if G[a, b] == 0:
                continue
            for mc, c in g.terms.items():
                key = tuple(i + j + l for i, j, l in zip(ma, mb, mc))
                out[key] = out.get(key, 0.0) + G[a, b] * float(c)
    return out


@dataclass(frozen=True)
class QMCertificate:
    """ell ~ sum_i (v_i^T G_i v_i) p_i with p_0 = 1."""

    generator_index: tuple[int, ...]  # into Generators.with_unit
    grams: tuple[np.ndarray, ...]
    residual: float

    def expansion(self, gens: Generators, d: int) -> dict:
        total: dict = {}
        for i, G in zip(self.generator_index, self.grams):
            g = gens.with_unit[i]
            for k, v in _gram_poly(G, localizing_basis(gens.n, g, d), g).items():
                total[k] = total.get(k, 0.0) + v
        return total

    def to_json(self) -> dict:
        return {
            "generator_index": list(self.generator_index),
            "gram": [G.tolist() for G in self.grams],
            "residual": self.residual,
        }


def coefficient_residual(expansion: dict, ell: MPoly) -> float:
    keys = set(expansion) | set(ell.terms)
    return max((abs(expansion.get(k, 0.0) - float(ell.coeff(k))) for k in keys), default=0.0)


def verify_qm_certificate(
    cert: QMCertificate, gens: Generators, d: int, ell: MPoly, cert_tol: float = CERT_TOL
) -> bool:
    for i, G in zip(cert.generator_index, cert.grams):
        k = len(localizing_basis(gens.n, gens.with_unit[i], d))
        if G.shape != (k, k) or np.max(np.abs(G - G.T), initial=0) > 1e-12:
            return False
        if np.linalg.eigvalsh(G)[0] < -cert_tol:
            return False
    return coefficient_residual(cert.expansion(gens, d), ell) <= cert_tol


@dataclass(frozen=True)
class DualCertificate:
    moments: MomentVector
    value: float
    min_eigs: tuple[float, ...]

    def to_json(self) -> dict:
        return {"L": self.moments.to_json(), "value": self.value, "localizing_min_eigs": list(self.min_eigs)}


def verify_dual_certificate(
    cert: DualCertificate,
    gens: Generators,
    d: int,
    ell: MPoly,
    psd_tol: float = PSD_TOL,
    refute_tol: float = 1e-6,
) -> bool:
    """L(1) = 1, localizing matrices PSD within psd_tol, L(ell) <= -refute_tol."""
    y = cert.moments
    if y.n != gens.n or y.d != d or abs(float(y.values[0]) - 1) > 1e-12:
        return False
    if any(e < -psd_tol for e in localizing_min_eigs(gens, d, y)):
        return False
    return float(y.apply(ell)) <= -refute_tol


@dataclass(frozen=True)
class SquareTerm:
    weight: Fraction
    base: MPoly


def verify_qm_certificate_exact(
    gens,
    d: int,
    ell: MPoly,
    witness: Sequence[Sequence[tuple]],
) -> bool:
    """Exact check of ell = sum_i sigma_i p_i (p_0 = 1) with each sigma_i a
    nonnegative combination of squares.

    witness[i] lists (weight, q) pairs meaning sigma_i = sum weight * q^2, for
    i = 0..m.  Raises ValueError if the witness is not presented as squares.
    """
    gens = _coerce_gens(gens)
    units = gens.with_unit
    if len(witness) != len(units):
        raise ValueError(f"expected {len(units)} sigma entries, got {len(witness)}")
    total = MPoly.zero(gens.n)
    for g, terms in zip(units, witness):
        sigma = MPoly.zero(gens.n)
        for item in terms:
            if not isinstance(item, tuple) or len(item) != 2:
                raise ValueError("each sigma term must be a (weight, polynomial) pair")
            w, q = Fraction(item[0]), item[1]
            if not isinstance(q, MPoly):
                raise ValueError("square bases must be polynomials")
            if w < 0:
                raise ValueError("square weights must be nonnegative")
            sigma = sigma + q * q * w
        if sigma.is_zero():
            continue
        prod = sigma * g
        if prod.degree() > d:
            return False
        total = total + prod
    return total == ell


# ---------------------------------------------------------------------------
# membership queries


@dataclass(frozen=True)
class QMResult:
    verdict: Verdict
    certificate: QMCertificate | DualCertificate | None
    min_value: float | None
    solver: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "min_L_of_ell": self.min_value,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "solver": self.solver,
        }


def _telemetry(sol: sdp.SDPSolution) -> dict:
    return {"status": sol.status.value, "iterations": sol.iterations, "converged": sol.converged}


def qm_member(gens, d: int, ell: MPoly, config: sdp.SolverConfig | None = None, cert_tol: float = CERT_TOL) -> QMResult:
    """Decide ell in QM(gens)_d by minimizing L(ell) over L(gens)_d."""
    gens = _coerce_gens(gens)
    config = config or sdp.SolverConfig()
    if ell.n != gens.n:
        raise ValueError("ell and generators have different variable counts")
    if ell.degree() > d:
        raise DegreeError(f"deg ell = {ell.degree()} exceeds d = {d}")
    problem, used = moment_problem(gens, d, objective=ell, label=f"qm d={d} ell={ell}")
    sol = _solve(problem, config)
    tele = _telemetry(sol)
    if sol.status is not sdp.Status.FEASIBLE:
        return QMResult(Verdict.UNDECIDED, None, None, tele)
    y = MomentVector(gens.n, d, tuple(float(v) for v in sol.y))
    value = float(y.apply(ell))
    if value < -config.refute_tol:
        cert = DualCertificate(y, value, localizing_min_eigs(gens, d, y))
        if verify_dual_certificate(cert, gens, d, ell, PSD_TOL, config.refute_tol):
            return QMResult(Verdict.REFUTED, cert, value, tele)
        return QMResult(Verdict.UNDECIDED, None, value, tele)
    if sol.block_duals is None:
        return QMResult(Verdict.UNDECIDED, None, value, tele)
    grams = [_psd_project(Z) for Z in sol.block_duals]
    # the multiplier of L(1) = 1 is the leftover constant; it belongs to sigma_0
    grams[0] = grams[0].copy()
    grams[0][0, 0] += max(float(sol.eq_duals[0]), 0.0)
    cert = QMCertificate(tuple(used), tuple(grams), 0.0)
    residual = coefficient_residual(cert.expansion(gens, d), ell)
    cert = QMCertificate(tuple(used), tuple(grams), residual)
    if residual <= cert_tol and verify_qm_certificate(cert, gens, d, ell, cert_tol):
        return QMResult(Verdict.CERTIFIED, cert, value, tele)
    return QMResult(Verdict.UNDECIDED, None, value, tele)


def _psd_project(Z: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh((Z + Z.T) / 2)
    G = (v * np.clip(w, 0, None)) @ v.T
    return (G + G.T) / 2


@dataclass(frozen=True)
class Separator:
    """Affine ell*(t) = c0 + c . t, approximately in QM(gens)_d, with ell*(x) < 0."""

    coeffs: tuple[float, ...]  # (c0, c1, ..., cn)
    value_at_point: float
    qm_residual: float
    refutation: sdp.Refutation

    def polynomial_text(self) -> str:
        c0, *c = self.coeffs
        terms = [f"{c0:+.10g}"] + [f"{ci:+.10g}*t{i + 1}" for i, ci in enumerate(c)]
        return " ".join(terms)

    def to_json(self) -> dict:
        return {
            "affine_coeffs": list(self.coeffs),
            "value_at_point": self.value_at_point,
            "qm_residual": self.qm_residual,
            "gram": [z.tolist() for z in self.refutation.z],
        }


@dataclass(frozen=True)
class RelaxationResult:
    verdict: Verdict
    point: tuple[float, ...]
    moments: MomentVector | None = None
    separator: Separator | None = None
    method: str = ""
    solver: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "x": list(self.point),
            "method": self.method,
            "moments": None if self.moments is None else self.moments.to_json(),
            "separator": None if self.separator is None else self.separator.to_json(),
            "solver": self.solver,
        }


def relaxation_member(
    gens,
    d: int,
    x: Sequence,
    config: sdp.SolverConfig | None = None,
    shortcut: bool = True,
) -> RelaxationResult:
    """Is x in pi(L(gens)_d)?  With shortcut, points of S are answered by point evaluation."""
    gens = _coerce_gens(gens)
    config = config or sdp.SolverConfig()
    if d < gens.max_degree():
        raise DegreeError(f"d = {d} is below the generator degree {gens.max_degree()}")
    if len(x) != gens.n:
        raise ValueError(f"point has {len(x)} coordinates, expected {gens.n}")
    xf = tuple(float(v) for v in x)
    if shortcut:
        xq = tuple(v if isinstance(v, (int, Fraction)) else Fraction(float(v)) for v in x)
        if gens.contains(xq):
            return RelaxationResult(Verdict.IN, xf, point_evaluation_moments(xq, d), method="point evaluation")
    problem, used = moment_problem(gens, d, point=xf, label=f"relax d={d} x={xf}")
    sol = _solve(problem, config)
    tele = _telemetry(sol)
    if sol.status is sdp.Status.FEASIBLE:
        y = MomentVector(gens.n, d, tuple(float(v) for v in sol.y))
        return RelaxationResult(Verdict.IN, xf, y, method="moment sdp", solver=tele)
    if sol.status is sdp.Status.INFEASIBLE:
        ref = sol.refutation
        lam = ref.lam
        coeffs = tuple(float(c) for c in lam)
        value = coeffs[0] + sum(c * xi for c, xi in zip(coeffs[1:], xf))
        affine = MPoly.linear(Fraction(coeffs[0]), [Fraction(c) for c in coeffs[1:]])
        cert = QMCertificate(tuple(used), ref.z, 0.0)
        residual = coefficient_residual(cert.expansion(gens, d), affine)
        sep = Separator(coeffs, value, residual, ref)
        return RelaxationResult(Verdict.OUT, xf, separator=sep, method="moment sdp", solver=tele)
    return RelaxationResult(Verdict.UNDECIDED, xf, method="moment sdp", solver=tele)


def verify_relaxation_result(
    res: RelaxationResult, gens, d: int, psd_tol: float = PSD_TOL, tol: float = 1e-7
) -> bool:
    """Re-check an IN witness or OUT separator from scratch."""
    gens = _coerce_gens(gens)
    if res.verdict is Verdict.IN:
        y = res.moments
        if y is None or y.d != d or abs(float(y.values[0]) - 1) > 1e-9:
            return False
        if any(abs(float(a) - b) > 1e-9 * (1 + abs(b)) for a, b in zip(y.first_moments(), res.point)):
            return False
        return all(e >= -psd_tol * (1 + float(np.max(np.abs(y.values)))) for e in localizing_min_eigs(gens, d, y))
    if res.verdict is Verdict.OUT:
        sep = res.separator
        if sep is None:
            return False
        for z in sep.refutation.z:
            if z.size and np.linalg.eigvalsh(z)[0] < -1e-9:
                return False
        c0, *c = sep.coeffs
        value = c0 + sum(ci * xi for ci, xi in zip(c, res.point))
        return sep.qm_residual <= tol and value < -1e-6
    return False


# ---------------------------------------------------------------------------
# probes


@dataclass(frozen=True)
class NestingEntry:
    x: tuple[float, ...]
    upper: Verdict  # at d + 1
    lower: Verdict  # at d
    truncation_ok: bool | None
    violation: bool


@dataclass(frozen=True)
class NestingReport:
    d: int
    entries: tuple[NestingEntry, ...]

    @property
    def violations(self) -> int:
        return sum(e.violation for e in self.entries)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "violations": self.violations,
            "points": [
                {
                    "x": list(e.x),
                    f"d={self.d + 1}": e.upper.value,
                    f"d={self.d}": e.lower.value,
                    "truncation_ok": e.truncation_ok,
                    "violation": e.violation,
                }
                for e in self.entries
            ],
        }


def nesting_check(gens, d: int, points: Sequence, config=None, shortcut: bool = False) -> NestingReport:
    """IN at degree d+1 must imply IN at degree d; OUT at d after IN at d+1 is a violation."""
    gens = _coerce_gens(gens)
    entries = []
    for x in points:
        hi = relaxation_member(gens, d + 1, x, config, shortcut)
        lo = relaxation_member(gens, d, x, config, shortcut)
        trunc = None
        if hi.verdict is Verdict.IN:
            y = hi.moments.truncate(d)
            scale = 1 + float(np.max(np.abs(np.asarray(y.values, dtype=float))))
            trunc = all(e >= -PSD_TOL * scale for e in localizing_min_eigs(gens, d, y))
        violation = hi.verdict is Verdict.IN and (lo.verdict is Verdict.OUT or trunc is False)
        entries.append(NestingEntry(hi.point, hi.verdict, lo.verdict, trunc, violation))
    return NestingReport(d, tuple(entries))


@dataclass(frozen=True)
class ProbeReport:
    d: int
    ells: tuple[tuple[str, QMResult], ...]
    points: tuple[RelaxationResult, ...]

    @property
    def evidence(self) -> str:
        verdicts = [r.verdict for _, r in self.ells]
        if any(v is Verdict.REFUTED for v in verdicts):
            return "AGAINST"
        if verdicts and all(v is Verdict.CERTIFIED for v in verdicts):
            return "FOR"
        return "INCONCLUSIVE"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "evidence": self.evidence,
            "ells": [{"ell": s, **r.to_json()} for s, r in self.ells],
            "points": [r.to_json() for r in self.points],
        }


class NegativeOnSetError(ValueError):
    pass


def exactness_probe(
    gens,
    d: int,
    family: Sequence[MPoly],
    points: Sequence = (),
    config=None,
    sample_box: Sequence[tuple[float, float]] | None = None,
    samples: int = 200,
    seed: int = 0,
) -> ProbeReport:
    """qm_member on each linear ell and relaxation_member on each point."""
    gens = _coerce_gens(gens)
    checks = [as_vector(x) for x in points if all(isinstance(v, (int, Fraction)) for v in x)]
    checks = [x for x in checks if gens.contains(x)]
    if sample_box is not None:
        checks += sample_set(gens.polys, sample_box, samples, seed)
    for ell in family:
        if ell.degree() > 1:
            raise ValueError(f"{ell} is not linear")
        bad = next((x for x in checks if ell.eval(x) < 0), None)
        if bad is not None:
            raise NegativeOnSetError(f"{ell} is negative at {tuple(map(str, bad))}, a point of S")
    ells = tuple((str(ell), qm_member(gens, d, ell, config)) for ell in family)
    pts = tuple(relaxation_member(gens, d, x, config) for x in points)
    return ProbeReport(d, ells, pts)


@dataclass(frozen=True)
class HalvingReport:
    d: int
    attempts: tuple[tuple[Fraction, QMResult], ...]
    a_star: Fraction | None

    @property
    def refutation(self) -> DualCertificate | None:
        for a, r in self.attempts:
            if a == self.a_star:
                return r.certificate
        return None

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "a_star": None if self.a_star is None else str(self.a_star),
            "attempts": [{"a": str(a), **r.to_json()} for a, r in self.attempts],
        }


def halving_probe(
    gens,
    d: int,
    start=Fraction(1, 2),
    floor=Fraction(1, 2**20),
    family: Callable[[Fraction], MPoly] = tangent_family,
    config=None,
) -> HalvingReport:
    """Try ell_a for a = start, start/2, ... down to floor; stop at the first REFUTED."""
    gens = _coerce_gens(gens)
    a = Fraction(start)
    attempts = []
    while a >= floor:
        res = qm_member(gens, d, family(a), config)
        attempts.append((a, res))
        if res.verdict is Verdict.REFUTED:
            return HalvingReport(d, tuple(attempts), a)
        a /= 2
    return HalvingReport(d, tuple(attempts), None)


# ---------------------------------------------------------------------------
# problem files


class ProblemFileError(ValueError):
    pass


def run_problem(data: dict, config=None, shortcut: bool = True) -> dict:
    """Evaluate a {"generators", "d", "queries"} problem description."""
    if not isinstance(data, dict):
        raise ProblemFileError("problem must be a JSON object")
    for key in ("generators", "d", "queries"):
        if key not in data:
            raise ProblemFileError(f"missing key {key!r}")
    if not isinstance(data["d"], int) or data["d"] < 0:
        raise ProblemFileError("d must be a nonnegative integer")
    texts = data["generators"]
    if not isinstance(texts, list) or not all(isinstance(t, str) for t in texts):
        raise ProblemFileError("generators must be a list of polynomial strings")
    queries = data["queries"]
    if not isinstance(queries, list):
        raise ProblemFileError("queries must be a list")
    n = data.get("n")
    if n is None:
        n = max([_nvars(t) for t in texts] + [_nvars(q["ell"]) for q in queries if q.get("type") == "qm"] + [1])
        n = max([n] + [len(q["x"]) for q in queries if q.get("type") == "point"])
    gens = Generators.parse(texts, n)
    d = data["d"]
    out = []
    for q in queries:
        kind = q.get("type")
        if kind == "qm":
            ell = parse_poly(q["ell"], n)
            res = qm_member(gens, d, ell, config)
            out.append({"type": "qm", "ell": format_poly(ell), **res.to_json()})
        elif kind == "point":
            x = [_parse_coord(v) for v in q["x"]]
            res = relaxation_member(gens, d, x, config, shortcut)
            out.append({"type": "point", **res.to_json()})
        else:
            raise ProblemFileError(f"unknown query type {kind!r}")
    return {"generators": gens.to_json(), "d": d, "n": n, "results": out}


def _parse_coord(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return v
    raise ProblemFileError(f"bad coordinate {v!r}")
