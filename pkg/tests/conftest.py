import os
from pathlib import Path

import pytest

# re-verify every Smith normal form by multiplication in test runs
os.environ.setdefault("TAMESYMBOL_CHECK_SNF", "1")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def curve_fixture(name):
    from tamesymbol.curves import load_curve
    return load_curve(FIXTURES / f"{name}.curve")


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
