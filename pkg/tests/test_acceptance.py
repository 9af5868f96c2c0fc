"""Acceptance criteria, each at its stated tolerance and runtime budget.

Each criterion prints one PASS/FAIL line (collected in the terminal
summary).  Running this file directly prints the same lines.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from spectrakit import acceptance

CRITERIA = [f"c{i}" for i in range(1, 11)]


def _describe(result) -> str:
    bad = [f"{s.name}: expected {s.expected}, computed {s.computed}" for s in result.subchecks if not s.passed]
    if not result.within_budget:
        bad.append(f"runtime {result.runtime_s:.1f}s exceeds {result.budget_s:.0f}s")
    return "; ".join(bad)


@pytest.mark.slow
@pytest.mark.parametrize("key", CRITERIA)
def test_criterion(key, acceptance_results):
    result = acceptance_results[key]
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.subchecks, "no sub-checks ran"
    assert result.passed, _describe(result)


@pytest.mark.slow
def test_failures_are_confined(acceptance_results):
    # the criterion tests above stay red where a stated value is wrong; this pins down that
    # nothing else inside those criteria regressed
    failing = {(k, s.name) for k, r in acceptance_results.items() for s in r.subchecks if not s.passed}
    assert failing <= {("c2", "p^(2)"), ("c3", "S(A) = S(c0,-c1)")}


if __name__ == "__main__":
    ok = True
    for res in acceptance.run_all(progress=lambda r: print(r.line(), flush=True)):
        ok &= res.passed
    raise SystemExit(0 if ok else 1)
