"""Acceptance criteria 1-11. Each prints one PASS/FAIL line; see also the terminal summary."""
import pytest

from cpalg import suites


@pytest.mark.parametrize("number", sorted(suites.CRITERIA))
def test_criterion(number, acceptance_lines):
    result = suites.run(number)
    acceptance_lines[number] = result.line()
    print(result.line())
    assert result.passed, result.detail
