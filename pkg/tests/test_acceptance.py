"""Acceptance criteria; each test prints one PASS/FAIL line.

The lines are also collected and repeated in the terminal summary.
"""

import pytest

from strandlab.acceptance import CRITERIA, run_criterion

LINES = {}


def report(k, passed, summary, label=""):
    name = CRITERIA[k][0] + (f" [{label}]" if label else "")
    line = f"criterion {k} {'PASS' if passed else 'FAIL'}: {name}: {summary}"
    LINES[(k, label)] = line
    print(line)


@pytest.fixture(scope="module")
def c4():
    return run_criterion(4)


@pytest.mark.parametrize("k", [1, 2, 3, 5, 6, 7, 8, 9])
def test_criterion(k):
    out = run_criterion(k)
    report(k, out["passed"], out["summary"])
    assert out["passed"], out["summary"]


def test_criterion_4_rectangular(c4):
    ok = c4["rectangular_passed"]
    report(4, ok, f"{c4['rectangular_instances']} rectangular instances, all composites zero: {ok}",
           "rectangular shapes")
    assert ok


@pytest.mark.xfail(strict=True, reason="the composite is nonzero for non-rectangular shapes, "
                                       "e.g. lambda=(2,1), mu=(1), n=m")
def test_criterion_4_literal(c4):
    report(4, c4["passed"], c4["summary"], "all shapes")
    assert c4["passed"], f"counterexamples: {c4['counterexamples'][:5]}"
