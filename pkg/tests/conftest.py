import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("suite")

from liewords.bundled import get_word
from liewords.logic import build_predicate_library

# Collected by the acceptance tests; echoed after the run so the lines
# survive pytest's output capture.
ACCEPT_LINES = []


@pytest.fixture(scope="session")
def tm_library():
    return build_predicate_library(get_word("thue-morse").dfao)


@pytest.fixture(scope="session")
def vtm_library():
    return build_predicate_library(get_word("vtm").dfao)


@pytest.fixture(scope="session")
def cantor_library():
    return build_predicate_library(get_word("cantor").dfao)


@pytest.fixture(scope="session")
def twelve_library():
    return build_predicate_library(get_word("twelve").dfao)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPT_LINES:
        terminalreporter.write_line("")
        for line in ACCEPT_LINES:
            terminalreporter.write_line(line)
