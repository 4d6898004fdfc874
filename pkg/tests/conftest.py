from pathlib import Path

import pytest

from mpareto.instances import build_problem, read_instance

FIXTURES = Path(__file__).parent / "fixtures"


def load(name: str):
    inst = read_instance(FIXTURES / f"{name}.json")
    return inst, build_problem(inst)


@pytest.fixture
def inst_a():
    return load("inst_a")[1]


@pytest.fixture
def inst_b():
    return load("inst_b")[1]


@pytest.fixture
def inst_c():
    return load("inst_c")[1]


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
