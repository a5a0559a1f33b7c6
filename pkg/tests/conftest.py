from pathlib import Path

import pytest

from timedreg import automata as au
from timedreg.textio import load_automaton

DATA = Path(__file__).parent / "data"

_criterion_lines = []


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def unit_gap_printed():
    """One-clock automaton looking for two stamps exactly one apart, rules as drawn."""
    return load_automaton(DATA / "unit_gap.aut")


@pytest.fixture
def unit_gap_automaton(unit_gap_printed):
    return au.complete_with_sink(unit_gap_printed)


@pytest.fixture
def first_equals_last_printed():
    """One-register automaton comparing the first and the last datum, rules as drawn."""
    return load_automaton(DATA / "first_equals_last.aut")


@pytest.fixture
def first_equals_last_automaton(first_equals_last_printed):
    return au.complete_with_sink(first_equals_last_printed)


@pytest.fixture
def report_criterion():
    def report(number, title, ok, detail=""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        _criterion_lines.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_criterion_lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
