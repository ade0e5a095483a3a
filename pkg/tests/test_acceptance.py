"""Acceptance criteria at full size; one pass/fail line per criterion is printed in the summary."""

import pytest

from prodint.acceptance import CRITERIA, run_criterion

RESULTS = []


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion_{c.number:02d}")
def test_criterion(criterion):
    outcome = run_criterion(criterion)
    RESULTS.append(outcome)
    print(outcome.line())
    assert outcome.passed, outcome.detail
