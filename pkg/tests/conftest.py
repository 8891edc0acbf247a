from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("repro", derandomize=True)
settings.load_profile("repro")

from planecc.casebook import FixtureId, paper_fixture

DATA = Path(__file__).resolve().parents[1] / "src" / "planecc" / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def fixtures():
    return {fid.value: paper_fixture(fid) for fid in FixtureId}


@pytest.fixture(scope="session")
def claims_report():
    from planecc.casebook import verify_paper

    return verify_paper()


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
