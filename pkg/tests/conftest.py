import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from combassoc.rewriting import RuleSet  # noqa: E402

DATA = Path(__file__).parent / "data"

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def cas3_rules() -> RuleSet:
    """The 11 rules, hand-encoded from the published figures."""
    return RuleSet.load(DATA / "cas3_rules.json")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
