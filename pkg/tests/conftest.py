import json
import pathlib

import pytest

DATA = pathlib.Path(__file__).parent / "data" / "oracles.json"
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture(scope="session")
def oracle():
    return json.loads(DATA.read_text())


@pytest.fixture
def record():
    """record(n, ok, detail) stores the one-line result of acceptance criterion n."""
    def rec(n: int, ok: bool, detail: str) -> bool:
        ACCEPTANCE[n] = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
        print(ACCEPTANCE[n])
        return ok
    return rec


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
