"""One test per acceptance criterion.  Each prints a single PASS/FAIL line;
the lines are repeated together in the terminal summary."""

import pytest

from confdesign.regress import CRITERIA, run_check, summary_line

SUMMARY = {}


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"criterion{n:02d}")
def test_criterion(number):
    kw = {"workers": 2} if number in (7, 11, 12) else {}
    result = run_check(number, **kw)
    line = summary_line(result)
    SUMMARY[number] = line
    print(line)
    assert result.passed, result.report()
