import pathlib

import pytest

from contra.ingest import StudySummary

REPO = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"

#: One line per acceptance criterion, echoed after the test summary so
#: they appear in the run output regardless of output capturing.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def tpc_path():
    return FIXTURES / "tpc.csv"


@pytest.fixture(scope="session")
def plaque_path():
    return FIXTURES / "plaque.csv"


def make_study(id=1, mean_x=100.0, sd_x=10.0, n_x=10,
               mean_y=110.0, sd_y=10.0, n_y=10, alpha_dm=0.05,
               reported_sign=0, **kw):
    defaults = dict(
        study_label="Test", year=2020, group_x_label="ctrl",
        group_y_label="tx", units="mg/dL", species="ms",
        pmid="0", loc="T1",
    )
    defaults.update(kw)
    return StudySummary(
        id=id, mean_x=mean_x, sd_x=sd_x, n_x=n_x,
        mean_y=mean_y, sd_y=sd_y, n_y=n_y, alpha_dm=alpha_dm,
        reported_sign=reported_sign, **defaults,
    )
