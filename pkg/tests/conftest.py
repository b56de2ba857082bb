from pathlib import Path

import pytest

from votecheck.core import Profile

FIXTURES = Path(__file__).parent / "fixtures"

# criterion number -> (passed, summary), filled in by test_acceptance
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def fixture_profile(name: str) -> Profile:
    from votecheck.formats import read_profile

    return read_profile(FIXTURES / f"{name}.vp")


@pytest.fixture
def P1():
    return Profile.from_rankings("abc", ["abc", "bca", "cab"])


@pytest.fixture
def P2():
    return Profile.from_ballots("abc", [(2, "abc"), (2, "bca"), (1, "cab")])


@pytest.fixture
def P3():
    return Profile.from_ballots("abc", [(3, "abc")])


@pytest.fixture
def P4():
    return Profile.from_ballots("abc", [(4, "abc"), (3, "bca"), (2, "cba")])


@pytest.fixture
def P5():
    return Profile.from_ballots("abc", [(6, "abc"), (5, "cab"), (4, "bca"), (2, "bac")])


@pytest.fixture
def P5_lifted():
    return Profile.from_ballots("abc", [(6, "abc"), (5, "cab"), (4, "bca"), (2, "abc")])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, summary = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {summary}")
