import json

import cvxpy as cp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectrakit import sdp
from spectrakit.acceptance import regression_instances
from spectrakit.sdp import Block, IllPosedProblemError, SDPProblem, SolverConfig, Status, solve, verify_solution


def scalar_block(c0, *c):
    return Block(np.array([[float(c0)]]), np.array([[[float(v)]] for v in c]))


def lmi(f0, fs):
    return Block(np.asarray(f0, float), np.asarray(fs, float))


def cvxpy_min(problem: SDPProblem) -> float:
    """Oracle: the same LMI program through cvxpy/CLARABEL."""
    y = cp.Variable(problem.m)
    cons = []
    for b in problem.blocks:
        M = b.f0 + sum(y[i] * b.f[i] for i in range(problem.m))
        cons.append((M + M.T) / 2 >> 0 if b.size > 1 else M >= 0)
    if problem.eq_a.shape[0]:
        cons.append(problem.eq_a @ y == problem.eq_b)
    prob = cp.Problem(cp.Minimize(problem.objective @ y), cons)
    prob.solve(solver=cp.CLARABEL)
    return prob.value


class TestSmall:
    def test_trivially_feasible(self):
        sol = solve(SDPProblem(1, (scalar_block(0, 1),)))
        assert sol.status is Status.FEASIBLE and sol.min_eigs[0] >= 0

    def test_constant_negative(self):
        sol = solve(SDPProblem(1, (scalar_block(-1, 0),)))
        assert sol.status is Status.INFEASIBLE
        assert np.isclose(float(sol.refutation.z[0][0, 0]), 1.0)
        assert verify_solution(SDPProblem(1, (scalar_block(-1, 0),)), sol).ok

    def test_interval_contradiction(self):
        # y >= 1 and y <= 0
        prob = SDPProblem(1, (scalar_block(-1, 1), scalar_block(0, -1)))
        sol = solve(prob)
        assert sol.status is Status.INFEASIBLE and verify_solution(prob, sol).ok

    def test_inconsistent_equalities(self):
        prob = SDPProblem(1, (scalar_block(0, 1),), np.array([[1.0], [1.0]]), np.array([0.0, 1.0]))
        sol = solve(prob)
        assert sol.status is Status.INFEASIBLE and verify_solution(prob, sol).ok

    def test_fixed_point_by_equalities(self):
        prob = SDPProblem(1, (scalar_block(0, 1),), np.array([[1.0]]), np.array([2.0]))
        sol = solve(prob)
        assert sol.status is Status.FEASIBLE and np.isclose(sol.y[0], 2.0)

    def test_weakly_infeasible_not_accepted(self):
        # [[y, 1], [1, 0]] >= 0 has no solution, yet approaches feasibility as y grows
        prob = SDPProblem(1, (lmi([[0, 1], [1, 0]], [[[1, 0], [0, 0]]]),))
        sol = solve(prob)
        assert sol.status is not Status.FEASIBLE

    def test_psd_cone_minimum(self):
        # min y1 + y2 s.t. [[y1, 1], [1, y2]] >= 0 -> 2
        prob = SDPProblem(
            2,
            (lmi([[0, 1], [1, 0]], [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]),),
            objective=np.array([1.0, 1.0]),
        )
        sol = solve(prob)
        assert sol.status is Status.FEASIBLE
        assert sol.objective_value == pytest.approx(2.0, abs=1e-6)
        assert sol.objective_value == pytest.approx(cvxpy_min(prob), abs=1e-6)


class TestValidation:
    def test_nonsymmetric(self):
        with pytest.raises(IllPosedProblemError):
            SDPProblem(1, (lmi([[0, 1], [0, 0]], [[[1, 0], [0, 1]]]),))

    def test_nan(self):
        with pytest.raises(IllPosedProblemError):
            SDPProblem(1, (scalar_block(float("nan"), 1),))

    def test_shape(self):
        with pytest.raises(IllPosedProblemError):
            SDPProblem(2, (scalar_block(0, 1),))

    def test_config(self):
        with pytest.raises(ValueError):
            SolverConfig(feas_tol=0)
        with pytest.raises(ValueError):
            SolverConfig(max_iter=0)


class TestVerification:
    def test_tampered_point_is_flagged(self):
        prob = SDPProblem(1, (scalar_block(-1, 1),))
        sol = solve(prob)
        assert verify_solution(prob, sol).ok
        bad = sdp.SDPSolution(sol.status, np.array([0.0]), sol.min_eigs)
        assert not verify_solution(prob, bad).ok

    def test_tampered_refutation_is_flagged(self):
        prob = SDPProblem(1, (scalar_block(-1, 1), scalar_block(0, -1)))
        sol = solve(prob)
        ref = sol.refutation
        forged = sdp.Refutation((ref.z[0] * 2, ref.z[1]), ref.lam, ref.margin, ref.residual)
        assert not verify_solution(prob, sdp.SDPSolution(Status.INFEASIBLE, None, (), forged)).ok

    def test_stalled_is_not_verified(self):
        prob = SDPProblem(1, (scalar_block(0, 1),))
        assert not verify_solution(prob, sdp.SDPSolution(Status.STALLED, None, ())).ok

    def test_json_round_trip(self):
        prob = regression_instances()[0][1]
        again = SDPProblem.from_json(json.loads(sdp.dumps_problem(prob)))
        assert sdp.dumps_problem(again) == sdp.dumps_problem(prob)


@pytest.mark.slow
def test_regression_set():
    cases = regression_instances()
    assert sum(lbl == "FEASIBLE" for *_, lbl in cases) == 20
    assert sum(lbl == "INFEASIBLE" for *_, lbl in cases) == 20
    for name, prob, label in cases:
        sol = solve(prob)
        assert sol.status.value == label, name
        assert verify_solution(prob, sol).ok, name


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9), st.integers(0, 2))
def test_random_lmis_against_cvxpy(entries, shift):
    # y1 + y2 is bounded below: its growth is what makes the diagonal positive
    a = np.array(entries, float).reshape(3, 3)
    A1 = np.diag([1.0, 0.0, 1.0])
    A2 = np.diag([0.0, 1.0, 1.0])
    A0 = (a + a.T) / 2 - shift * np.eye(3)
    prob = SDPProblem(2, (lmi(A0, [A1, A2]),), objective=np.array([1.0, 1.0]))
    sol = solve(prob)
    assert sol.status is Status.FEASIBLE
    assert verify_solution(prob, sol).ok
    assert sol.objective_value == pytest.approx(cvxpy_min(prob), abs=1e-5 * (1 + abs(sol.objective_value)))
