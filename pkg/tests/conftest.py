import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from psikit.contingency import ContingencyTable

settings.register_profile("default", max_examples=200, deadline=None)
settings.register_profile("ci", max_examples=1000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def tables(draw, max_count: int = 1000):
    cells = draw(st.tuples(*(st.integers(0, max_count) for _ in range(4))).filter(lambda t: sum(t) > 0))
    return ContingencyTable(*cells)


# Acceptance results, printed once at the end of the session.
ACCEPTANCE: dict[str, list[bool]] = {}


def record_acceptance(criterion: str, passed: bool) -> None:
    ACCEPTANCE.setdefault(criterion, []).append(passed)


@pytest.fixture
def acceptance():
    return record_acceptance


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE, key=lambda k: int(k.split(".")[0])):
        results = ACCEPTANCE[criterion]
        verdict = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{verdict}  {criterion}  ({sum(results)}/{len(results)} checks)")
