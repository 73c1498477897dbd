import pytest

from ddcayley.field import field_for
from ddcayley.groups import AffineGroup

SMALL_QR = [(2, 2), (3, 2), (2, 3), (4, 2), (5, 2)]

_acceptance_lines: list[str] = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def fields():
    return {qr: field_for(*qr) for qr in SMALL_QR}


@pytest.fixture(scope="session")
def groups(fields):
    return {qr: AffineGroup(f) for qr, f in fields.items()}
