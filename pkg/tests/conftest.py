import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def rationals(max_num=30, max_den=12):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def nonzero_rationals(max_num=30, max_den=12):
    return rationals(max_num, max_den).filter(bool)


@pytest.fixture
def rng():
    return random.Random(20240611)


# Acceptance criteria register their outcome here so the terminal summary can
# print one line per criterion.
ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("acceptance")
    if crit is None:
        return
    number, title = crit
    if report.when == "call" or report.outcome != "passed":
        # a failure in teardown (the runtime budget check) overrides a passing call
        if report.when == "call" or report.outcome == "failed":
            status = "PASS" if report.outcome == "passed" else "FAIL"
            ACCEPTANCE_RESULTS[number] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        status, title = ACCEPTANCE_RESULTS[number]
        label = f"criterion {number:>2}" if number <= 11 else "full run    "
        terminalreporter.write_line(f"{status}  {label}: {title}")
