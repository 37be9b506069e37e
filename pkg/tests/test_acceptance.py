"""
One test per acceptance criterion; each prints a PASS/FAIL line with its
timing against the allowed budget (run with -s to see them).
"""

import pytest

from swcext.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.details
    assert result.seconds < result.limit
