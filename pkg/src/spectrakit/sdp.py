"""Dense primal-dual interior-point solver for small block-diagonal LMIs.

A problem asks for y in R^m with

    F_b(y) = F0_b + sum_i y_i Fi_b  >= 0   for every block b,
    A y = b,

optionally minimizing c . y.  Verdicts are three-valued: FEASIBLE comes with a
point, INFEASIBLE with a dual refutation (PSD multipliers Z_b and lambda with
sum_b <Z_b, Fi_b> = (A^T lambda)_i and sum_b <Z_b, F0_b> + lambda . b < 0),
and STALLED means neither could be verified.  Nothing is reported that
:func:`verify_solution` would reject.

The interior-point core is an infeasible-start HKM method with Mehrotra
predictor-corrector steps on the LMI ("dual") form of a standard SDP.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla


_TRACE = False


class Status(str, enum.Enum):
    FEASIBLE = "FEASIBLE"
    INFEASIBLE = "INFEASIBLE"
    STALLED = "STALLED"


class IllPosedProblemError(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    f0: np.ndarray  # (k, k)
    f: np.ndarray  # (m, k, k)

    @property
    def size(self) -> int:
        return self.f0.shape[0]

    def at(self, y: np.ndarray) -> np.ndarray:
        return self.f0 + np.tensordot(y, self.f, axes=1)

    def scale(self) -> float:
        return 1.0 + float(np.linalg.norm(self.f0)) + float(np.sum(np.linalg.norm(self.f, axis=(1, 2))))


@dataclass(frozen=True)
class SDPProblem:
    m: int
    blocks: tuple[Block, ...]
    eq_a: np.ndarray = None  # (p, m)
    eq_b: np.ndarray = None  # (p,)
    objective: np.ndarray | None = None
    label: str = ""

    def __post_init__(self):
        if self.eq_a is None:
            object.__setattr__(self, "eq_a", np.zeros((0, self.m)))
            object.__setattr__(self, "eq_b", np.zeros(0))
        validate(self)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "m": self.m,
            "blocks": [{"F0": b.f0.tolist(), "F": b.f.tolist()} for b in self.blocks],
            "eq_a": self.eq_a.tolist(),
            "eq_b": self.eq_b.tolist(),
            "objective": None if self.objective is None else self.objective.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SDPProblem":
        m = int(data["m"])
        blocks = []
        for b in data["blocks"]:
            f0 = np.asarray(b["F0"], dtype=float)
            f = np.asarray(b["F"], dtype=float).reshape((m,) + f0.shape)
            blocks.append(Block(f0, f))
        eq_a = np.asarray(data.get("eq_a") or np.zeros((0, m)), dtype=float).reshape(-1, m)
        eq_b = np.asarray(data.get("eq_b") or [], dtype=float)
        obj = data.get("objective")
        return cls(m, tuple(blocks), eq_a, eq_b, None if obj is None else np.asarray(obj, float), data.get("label", ""))


def validate(problem: SDPProblem):
    if not problem.blocks:
        raise IllPosedProblemError("at least one block is required")
    for idx, b in enumerate(problem.blocks):
        k = b.f0.shape[0]
        if k < 1 or b.f0.shape != (k, k) or b.f.shape != (problem.m, k, k):
            raise IllPosedProblemError(f"block {idx}: inconsistent shapes {b.f0.shape}, {b.f.shape}")
        if not (np.all(np.isfinite(b.f0)) and np.all(np.isfinite(b.f))):
            raise IllPosedProblemError(f"block {idx}: non-finite entries")
        if np.max(np.abs(b.f0 - b.f0.T), initial=0) > 1e-12 or np.max(
            np.abs(b.f - b.f.transpose(0, 2, 1)), initial=0
        ) > 1e-12:
            raise IllPosedProblemError(f"block {idx}: matrices are not symmetric")
    if problem.eq_a.shape != (problem.eq_b.shape[0], problem.m):
        raise IllPosedProblemError("equality system has inconsistent shape")
    if problem.objective is not None and problem.objective.shape != (problem.m,):
        raise IllPosedProblemError("objective has wrong length")


@dataclass(frozen=True)
class SolverConfig:
    feas_tol: float = 1e-7
    refute_tol: float = 1e-6
    max_iter: int = 200
    box: float = 1e4  # |y_i| <= box is imposed while solving
    gap_tol: float = 1e-9
    residual_tol: float = 1e-7
    psd_tol: float = 1e-9

    def __post_init__(self):
        for name in ("feas_tol", "refute_tol", "box", "gap_tol", "residual_tol", "psd_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")


@dataclass(frozen=True)
class Refutation:
    """Normalized dual multipliers proving infeasibility (sum of traces = 1)."""

    z: tuple[np.ndarray, ...]
    lam: np.ndarray
    margin: float
    residual: float

    def to_json(self) -> dict:
        return {
            "Z": [zb.tolist() for zb in self.z],
            "lambda": self.lam.tolist(),
            "margin": self.margin,
            "residual": self.residual,
        }


@dataclass(frozen=True)
class SDPSolution:
    status: Status
    y: np.ndarray | None
    min_eigs: tuple[float, ...]
    refutation: Refutation | None = None
    objective_value: float | None = None
    dual_value: float | None = None
    block_duals: tuple[np.ndarray, ...] | None = None
    eq_duals: np.ndarray | None = None
    iterations: int = 0
    converged: bool = False
    info: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "y": None if self.y is None else self.y.tolist(),
            "min_eigs": list(self.min_eigs),
            "refutation": None if self.refutation is None else self.refutation.to_json(),
            "objective_value": self.objective_value,
            "dual_value": self.dual_value,
            "iterations": self.iterations,
            "converged": self.converged,
            "info": self.info,
        }


# ---------------------------------------------------------------------------
# interior-point core: max b.y  s.t.  S = C - sum_i y_i A_i >= 0 (block diagonal)


@dataclass
class _IPMResult:
    y: np.ndarray
    X: list
    S: list
    iterations: int
    converged: bool
    pobj: float
    dobj: float


def _chol_inv(S):
    L = np.linalg.cholesky(S)
    Linv = sla.solve_triangular(L, np.eye(S.shape[0]), lower=True)
    return Linv.T @ Linv


def _max_step(X, dX):
    try:
        L = np.linalg.cholesky(X)
    except np.linalg.LinAlgError:
        return 0.0
    W = sla.solve_triangular(L, dX, lower=True)
    W = sla.solve_triangular(L, W.T, lower=True)
    lam = np.linalg.eigvalsh((W + W.T) / 2)[0]
    return np.inf if lam >= 0 else -1.0 / lam


def _ipm(C, A, b, max_iter=200, tol=1e-9, monitor=None) -> _IPMResult:
    m = b.shape[0]
    n_total = sum(c.shape[0] for c in C)
    X, S = [], []
    for Cb, Ab in zip(C, A):
        k = Cb.shape[0]
        norms = np.linalg.norm(Ab, axis=(1, 2)) if m else np.zeros(0)
        xi = max(10.0, np.sqrt(k), k * float(np.max((1 + np.abs(b)) / (1 + norms), initial=0)))
        eta = max(10.0, np.sqrt(k), float(np.max(norms, initial=0)), float(np.linalg.norm(Cb)))
        X.append(xi * np.eye(k))
        S.append(eta * np.eye(k))
    y = np.zeros(m)
    normb = np.linalg.norm(b)
    normC = np.sqrt(sum(np.linalg.norm(c) ** 2 for c in C))
    converged = False
    it = 0
    pobj = dobj = np.nan
    best, since_best = np.inf, 0
    for it in range(1, max_iter + 1):
        AX = sum(np.einsum("ijk,jk->i", Ab, Xb) for Ab, Xb in zip(A, X))
        rp = b - AX
        Rd = [Cb - Sb - np.tensordot(y, Ab, axes=1) for Cb, Sb, Ab in zip(C, S, A)]
        mu = sum(np.vdot(Xb, Sb) for Xb, Sb in zip(X, S)) / n_total
        pobj = sum(np.vdot(Cb, Xb) for Cb, Xb in zip(C, X))
        dobj = float(b @ y)
        pinf = np.linalg.norm(rp) / (1 + normb)
        dinf = np.sqrt(sum(np.linalg.norm(r) ** 2 for r in Rd)) / (1 + normC)
        gap = abs(pobj - dobj) / (1 + abs(pobj) + abs(dobj))
        if max(pinf, dinf, gap) < tol and mu < tol * (1 + abs(pobj)):
            converged = True
            break
        if monitor is not None and monitor(y, X):
            converged = True
            break
        err = max(pinf, dinf, gap)
        if err < 0.5 * best:
            best, since_best = err, 0
        else:
            since_best += 1
            if since_best >= 20:
                break
        try:
            Sinv = [_chol_inv(Sb) for Sb in S]
        except np.linalg.LinAlgError:
            break
        M = np.zeros((m, m))
        XASinv = []
        for Ab, Xb, Si in zip(A, X, Sinv):
            T = Xb @ Ab @ Si  # (m, k, k)
            XASinv.append(T)
            M += np.einsum("ikl,jlk->ij", Ab, T)
        M = (M + M.T) / 2
        try:
            factor = sla.cho_factor(M + 1e-14 * np.trace(M) / max(m, 1) * np.eye(m))
            solve = lambda r: sla.cho_solve(factor, r)  # noqa: E731
        except (np.linalg.LinAlgError, ValueError):
            Mpinv = np.linalg.pinv(M)
            solve = lambda r: Mpinv @ r  # noqa: E731

        def direction(sigma_mu, corr):
            R = []
            for Xb, Rdb, Si, cb in zip(X, Rd, Sinv, corr):
                Rb = sigma_mu * Si - Xb @ Rdb @ Si
                if cb is not None:
                    Rb = Rb - cb @ Si
                R.append(Rb)
            rhs = b - sum(np.einsum("ijk,kj->i", Ab, Rb) for Ab, Rb in zip(A, R))
            dy = solve(rhs)
            dS = [Rdb - np.tensordot(dy, Ab, axes=1) for Rdb, Ab in zip(Rd, A)]
            dX = []
            for Xb, Si, dSb, Rb, Rdb in zip(X, Sinv, dS, R, Rd):
                # dX = sigma mu S^-1 - X - X dS S^-1 - corr S^-1
                d = Rb + Xb @ Rdb @ Si - Xb - Xb @ dSb @ Si
                dX.append((d + d.T) / 2)
            return dX, dy, dS

        nocorr = [None] * len(X)
        dXp, dyp, dSp = direction(0.0, nocorr)
        ap = min(1.0, min(_max_step(Xb, d) for Xb, d in zip(X, dXp)))
        ad = min(1.0, min(_max_step(Sb, d) for Sb, d in zip(S, dSp)))
        mu_aff = sum(np.vdot(Xb + ap * dx, Sb + ad * ds) for Xb, dx, Sb, ds in zip(X, dXp, S, dSp)) / n_total
        sigma = min(1.0, max(0.0, (mu_aff / mu) ** 3)) if mu > 0 else 0.0
        corr = [dx @ ds for dx, ds in zip(dXp, dSp)]
        dX, dy, dS = direction(sigma * mu, corr)
        gamma = 0.9 + 0.09 * min(ap, ad)
        ap = min(1.0, gamma * min(_max_step(Xb, d) for Xb, d in zip(X, dX)))
        ad = min(1.0, gamma * min(_max_step(Sb, d) for Sb, d in zip(S, dS)))
        if _TRACE:
            print(it, f"{pinf:.2e} {dinf:.2e} {gap:.2e} mu={mu:.2e} ap={ap:.3f} ad={ad:.3f} sig={sigma:.2e}")
        if ap < 1e-12 and ad < 1e-12:
            break
        X = [Xb + ap * d for Xb, d in zip(X, dX)]
        X = [(Xb + Xb.T) / 2 for Xb in X]
        y = y + ad * dy
        S = [Sb + ad * d for Sb, d in zip(S, dS)]
        S = [(Sb + Sb.T) / 2 for Sb in S]
    return _IPMResult(y, X, S, it, converged, float(pobj), float(dobj))


# ---------------------------------------------------------------------------
# reductions


def _reduce_equalities(problem: SDPProblem):
    """y = y0 + N z parametrizes {A y = b}; returns (y0, N, inconsistency)."""
    A, b = problem.eq_a, problem.eq_b
    m = problem.m
    if A.shape[0] == 0:
        return np.zeros(m), np.eye(m), 0.0
    y0, *_ = np.linalg.lstsq(A, b, rcond=None)
    N = sla.null_space(A)
    incons = float(np.max(np.abs(A @ y0 - b), initial=0))
    return y0, N, incons


def _reduced_blocks(problem: SDPProblem, y0, N):
    G0, G = [], []
    for blk in problem.blocks:
        G0.append(blk.at(y0))
        G.append(np.tensordot(N.T, blk.f, axes=1))  # (r, k, k)
    return G0, G


def _box_block(y0, N, R):
    """Diagonal block with entries R - y_i and R + y_i."""
    m = y0.shape[0]
    r = N.shape[1]
    d0 = np.concatenate([R - y0, R + y0])
    dG = np.concatenate([-N, N], axis=0)  # (2m, r)
    G0 = np.diag(d0)
    G = np.zeros((r, 2 * m, 2 * m))
    idx = np.arange(2 * m)
    G[:, idx, idx] = dG.T
    return G0, G


def _lmi_min(G0, G, c, config: SolverConfig, monitor=None):
    """min c.x s.t. G0_b + sum_j x_j G_b[j] >= 0; returns (x, multipliers, result)."""
    C = G0
    A = [-g for g in G]
    res = _ipm(C, A, -c, config.max_iter, config.gap_tol, monitor)
    return res.y, res.X, res


def block_min_eigs(problem: SDPProblem, y: np.ndarray) -> tuple[float, ...]:
    return tuple(float(np.linalg.eigvalsh(blk.at(y))[0]) for blk in problem.blocks)


def _make_refutation(problem: SDPProblem, Z: list[np.ndarray]) -> Refutation | None:
    total = sum(np.trace(z) for z in Z)
    if not total > 0:
        return None
    Z = [_psd_part((z + z.T) / 2) / total for z in Z]
    g = np.zeros(problem.m)
    f0 = 0.0
    for blk, z in zip(problem.blocks, Z):
        g += np.einsum("ijk,jk->i", blk.f, z)
        f0 += float(np.vdot(blk.f0, z))
    if problem.eq_a.shape[0]:
        lam, *_ = np.linalg.lstsq(problem.eq_a.T, g, rcond=None)
        resid = g - problem.eq_a.T @ lam
        value = f0 + float(lam @ problem.eq_b)
    else:
        lam = np.zeros(0)
        resid = g
        value = f0
    return Refutation(tuple(Z), lam, -value, float(np.max(np.abs(resid), initial=0)))


def _psd_part(z):
    w, v = np.linalg.eigh(z)
    return (v * np.clip(w, 0, None)) @ v.T


def _feasible_point_ok(problem, y, config) -> tuple[bool, tuple[float, ...]]:
    eigs = block_min_eigs(problem, y)
    ok = all(e >= -config.feas_tol * blk.scale() for e, blk in zip(eigs, problem.blocks))
    if problem.eq_a.shape[0]:
        ok = ok and float(np.max(np.abs(problem.eq_a @ y - problem.eq_b))) <= 1e-9 * (
            1 + float(np.max(np.abs(problem.eq_b)))
        )
    return ok, eigs


def _refutation_ok(ref: Refutation | None, config) -> bool:
    return ref is not None and ref.margin > config.refute_tol and ref.residual <= config.residual_tol


def solve(problem: SDPProblem, config: SolverConfig | None = None) -> SDPSolution:
    """Decide feasibility (and optimize the objective, if any)."""
    config = config or SolverConfig()
    validate(problem)
    y0, N, incons = _reduce_equalities(problem)
    if incons > 1e-9 * (1 + float(np.max(np.abs(problem.eq_b), initial=0))):
        # the affine constraints alone are contradictory
        r = problem.eq_b - problem.eq_a @ y0
        lam = -r / np.max(np.abs(r))
        ref = Refutation(
            tuple(np.zeros_like(b.f0) for b in problem.blocks),
            lam,
            -float(lam @ problem.eq_b),
            float(np.max(np.abs(problem.eq_a.T @ lam), initial=0)),
        )
        status = Status.INFEASIBLE if _refutation_ok(ref, config) else Status.STALLED
        return SDPSolution(status, None, (), ref if status is Status.INFEASIBLE else None,
                           info={"phase": "equalities"})
    R = max(config.box, 10 * float(np.max(np.abs(y0), initial=0)))
    r = N.shape[1]
    G0, G = _reduced_blocks(problem, y0, N)
    if r == 0:
        y = y0
        ok, eigs = _feasible_point_ok(problem, y, config)
        if ok:
            obj = None if problem.objective is None else float(problem.objective @ y)
            return SDPSolution(Status.FEASIBLE, y, eigs, objective_value=obj, converged=True,
                               info={"phase": "fixed point"})
        ref = _make_refutation(problem, [_neg_part_projector(blk.at(y)) for blk in problem.blocks])
        if _refutation_ok(ref, config):
            return SDPSolution(Status.INFEASIBLE, None, eigs, ref, info={"phase": "fixed point"})
        return SDPSolution(Status.STALLED, y, eigs, info={"phase": "fixed point"})

    # phase 1: maximize t subject to F_b - t I >= 0, t <= 1, inside the box
    P0, P = [], []
    for g0, g in zip(G0, G):
        k = g0.shape[0]
        P0.append(g0)
        P.append(np.concatenate([g, -np.eye(k)[None]], axis=0))
    P0.append(np.ones((1, 1)))
    P.append(np.concatenate([np.zeros((r, 1, 1)), -np.ones((1, 1, 1))], axis=0))
    bx0, bx = _box_block(y0, N, R)
    P0.append(bx0)
    P.append(np.concatenate([bx, np.zeros((1,) + bx0.shape)], axis=0))
    c = np.zeros(r + 1)
    c[-1] = -1.0
    nb = len(problem.blocks)

    def settled(xk, Xk):
        yk = y0 + N @ xk[:r]
        if all(e >= 0 for e in block_min_eigs(problem, yk)):
            return True
        return xk[-1] < 0 and _refutation_ok(_make_refutation(problem, Xk[:nb]), config)

    x, Xs, res1 = _lmi_min(P0, P, c, config, settled)
    y = y0 + N @ x[:r]
    t = float(x[-1])
    ok, eigs = _feasible_point_ok(problem, y, config)
    info = {"phase1_iterations": res1.iterations, "phase1_converged": res1.converged, "phase1_t": t, "box": R}
    if not ok:
        ref = _make_refutation(problem, Xs[: len(problem.blocks)])
        if _refutation_ok(ref, config):
            return SDPSolution(Status.INFEASIBLE, None, eigs, ref, iterations=res1.iterations,
                               converged=res1.converged, info=info)
        return SDPSolution(Status.STALLED, y, eigs, iterations=res1.iterations, converged=False, info=info)
    if problem.objective is None:
        return SDPSolution(Status.FEASIBLE, y, eigs, iterations=res1.iterations, converged=res1.converged,
                           info=info)

    # phase 2: minimize the objective
    cz = N.T @ problem.objective
    Q0 = list(G0) + [bx0]
    Q = list(G) + [bx]
    x2, Xs2, res2 = _lmi_min(Q0, Q, cz, config)
    y2 = y0 + N @ x2
    ok2, eigs2 = _feasible_point_ok(problem, y2, config)
    info.update({"phase2_iterations": res2.iterations, "phase2_converged": res2.converged})
    Z = [(z + z.T) / 2 for z in Xs2[: len(problem.blocks)]]
    box_dual = np.diag(Xs2[-1])
    info["box_dual_max"] = float(np.max(np.abs(box_dual), initial=0))
    g = np.zeros(problem.m)
    f0 = 0.0
    for blk, z in zip(problem.blocks, Z):
        g += np.einsum("ijk,jk->i", blk.f, z)
        f0 += float(np.vdot(blk.f0, z))
    if problem.eq_a.shape[0]:
        lam, *_ = np.linalg.lstsq(problem.eq_a.T, problem.objective - g, rcond=None)
        dual_value = -f0 + float(lam @ problem.eq_b)
    else:
        lam = np.zeros(0)
        dual_value = -f0
    iters = res1.iterations + res2.iterations
    if not ok2:
        # fall back to the phase-1 point: still a verified feasible point
        return SDPSolution(Status.FEASIBLE, y, eigs, objective_value=float(problem.objective @ y),
                           iterations=iters, converged=False, info=info)
    return SDPSolution(
        Status.FEASIBLE,
        y2,
        eigs2,
        objective_value=float(problem.objective @ y2),
        dual_value=dual_value,
        block_duals=tuple(Z),
        eq_duals=lam,
        iterations=iters,
        converged=res2.converged,
        info=info,
    )


def _neg_part_projector(M):
    w, v = np.linalg.eigh(M)
    u = v[:, 0]
    return np.outer(u, u)


# ---------------------------------------------------------------------------
# independent verification


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    checks: tuple[tuple[str, bool, str], ...]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [{"name": n, "ok": o, "detail": d} for n, o, d in self.checks]}


def verify_solution(problem: SDPProblem, solution: SDPSolution, config: SolverConfig | None = None) -> VerificationReport:
    """Recompute every claim of a verdict from the raw problem data."""
    config = config or SolverConfig()
    checks: list[tuple[str, bool, str]] = []
    if solution.status is Status.FEASIBLE:
        y = solution.y
        finite = y is not None and y.shape == (problem.m,) and bool(np.all(np.isfinite(y)))
        checks.append(("point present", finite, ""))
        if finite:
            if problem.eq_a.shape[0]:
                r = float(np.max(np.abs(problem.eq_a @ y - problem.eq_b)))
                tol = 1e-9 * (1 + float(np.max(np.abs(problem.eq_b))))
                checks.append(("equalities", r <= tol, f"max residual {r:.3e} (tol {tol:.1e})"))
            for i, blk in enumerate(problem.blocks):
                e = float(np.linalg.eigvalsh(blk.at(y))[0])
                tol = config.feas_tol * blk.scale()
                checks.append((f"block {i} psd", e >= -tol, f"min eig {e:.3e} (tol {tol:.1e})"))
    elif solution.status is Status.INFEASIBLE:
        ref = solution.refutation
        checks.append(("refutation present", ref is not None, ""))
        if ref is not None:
            g = np.zeros(problem.m)
            f0 = 0.0
            total = 0.0
            for i, (blk, z) in enumerate(zip(problem.blocks, ref.z)):
                sym = float(np.max(np.abs(z - z.T), initial=0))
                e = float(np.linalg.eigvalsh((z + z.T) / 2)[0]) if z.size else 0.0
                checks.append((f"multiplier {i} psd", sym <= 1e-12 and e >= -config.psd_tol,
                               f"min eig {e:.3e}"))
                g += np.einsum("ijk,jk->i", blk.f, z)
                f0 += float(np.vdot(blk.f0, z))
                total += float(np.trace(z))
            lam = ref.lam
            if problem.eq_a.shape[0]:
                ok_shape = lam.shape == (problem.eq_a.shape[0],)
                checks.append(("lambda shape", ok_shape, ""))
                if not ok_shape:
                    return VerificationReport(False, tuple(checks))
                resid = float(np.max(np.abs(g - problem.eq_a.T @ lam), initial=0))
                value = f0 + float(lam @ problem.eq_b)
            else:
                resid = float(np.max(np.abs(g), initial=0))
                value = f0
            checks.append(("ray residual", resid <= config.residual_tol, f"{resid:.3e}"))
            checks.append(("refutation margin", -value > config.refute_tol, f"{-value:.3e}"))
            normalized = abs(total - 1) <= 1e-9 or (total == 0 and bool(np.any(lam)))
            checks.append(("normalization", normalized, f"sum of traces {total:.6f}"))
    else:
        checks.append(("verdict", False, "solver stalled; nothing to verify"))
    return VerificationReport(all(c[1] for c in checks), tuple(checks))


def dumps_problem(problem: SDPProblem) -> str:
    return json.dumps(problem.to_json(), sort_keys=True)
