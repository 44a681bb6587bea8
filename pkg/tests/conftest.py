from dataclasses import replace

import hypothesis
import numpy as np
import pytest
from hypothesis import strategies as st

from pdav.controllers import PdavGains
from pdav.harness import ScenarioConfig, run_pdav, run_stabilize_compare

np.seterr(divide="raise", invalid="raise", over="raise", under="ignore")

hypothesis.settings.register_profile("default", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("default")

finite = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False, allow_subnormal=False)
vectors = st.tuples(finite, finite, finite).map(np.array)
directions = vectors.filter(lambda v: np.linalg.norm(v) > 1e-3).map(lambda v: v / np.linalg.norm(v))


# Full-length scenario runs are shared across test modules.

@pytest.fixture(scope="session")
def nominal_run():
    return run_pdav(ScenarioConfig())


@pytest.fixture(scope="session")
def perturbed_run():
    return run_pdav(ScenarioConfig(perturbed=True))


@pytest.fixture(scope="session")
def perturbed_run_gamma20():
    return run_pdav(replace(ScenarioConfig(perturbed=True), pdav_gains=PdavGains(gamma=20.0)))


@pytest.fixture(scope="session")
def compare_runs():
    return run_stabilize_compare(ScenarioConfig(kind="stabilize-compare"))


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    def report(tag, passed, detail):
        _ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {tag}: {detail}")
    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
