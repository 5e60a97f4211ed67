import pytest

from slitdisk import build

# one PASS/FAIL line per acceptance criterion, printed after the run
CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def cx():
    return build()


@pytest.fixture
def record_criterion():
    def record(number: int, ok: bool, detail: str) -> None:
        CRITERIA[number] = (bool(ok), detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        ok, detail = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
