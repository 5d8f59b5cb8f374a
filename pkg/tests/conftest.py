import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).parent
FIXTURES = TESTS / "fixtures"
CORPUS = TESTS / "corpus"

sys.path.insert(0, str(TESTS))

# criterion id -> (passed, description), filled in by test_acceptance
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def read(path: Path) -> str:
    with open(path, encoding="utf-8", newline="") as f:
        return f.read()


@pytest.fixture
def prototype():
    return read(FIXTURES / "printer_prototype.java")


@pytest.fixture
def printer():
    return read(FIXTURES / "printer_template.java")


@pytest.fixture
def printer_data():
    return read(FIXTURES / "printer_data.txt")


@pytest.fixture
def generated():
    return read(FIXTURES / "printer_generated.java")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.removeprefix("AC"))):
        passed, text = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {key}: {text}")
