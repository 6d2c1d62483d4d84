"""Acceptance gate: the twelve theorem-level checks, one pass/fail
line each, with runtime budgets on the enumeration-heavy ones."""

import time

import pytest

from bicat.cli import THEOREM_CHECKS

BUDGETS = {"axiom-closure": 60.0, "comma-contractibility": 120.0}


@pytest.mark.parametrize("name,fn", THEOREM_CHECKS,
                         ids=[n for n, _ in THEOREM_CHECKS])
def test_acceptance(name, fn, capsys):
    start = time.time()
    try:
        detail = fn(0) if name == "mutation-sensitivity" else fn()
        ok = True
    except Exception as e:
        detail, ok = "%s: %s" % (type(e).__name__, e), False
    elapsed = time.time() - start
    with capsys.disabled():
        print("%s %-24s %6.1fs  %s"
              % ("PASS" if ok else "FAIL", name, elapsed, detail))
    assert ok, detail
    budget = BUDGETS.get(name)
    if budget is not None:
        assert elapsed < budget, "%s took %.1fs (budget %.0fs)" \
            % (name, elapsed, budget)
