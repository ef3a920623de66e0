"""Acceptance criteria at their stated tolerances, one test and one status line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the status lines.
"""

from __future__ import annotations

import pytest

from braidforge.acceptance import CRITERIA, SLOW, run_criterion


CASES = [pytest.param(n, marks=pytest.mark.slow) if n in SLOW else n for n in sorted(CRITERIA)]


@pytest.mark.parametrize("number", CASES, ids=lambda n: f"criterion_{n:02d}")
def test_criterion(number):
    result = run_criterion(number)
    print("\n" + result.line())
    assert result.passed, result.line()
