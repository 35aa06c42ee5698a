import random

import pytest

from grigorchuk.growth import enumerate_ball


@pytest.fixture(scope="session")
def ball14():
    return enumerate_ball(14)


@pytest.fixture(scope="session")
def ball20():
    return enumerate_ball(20, cap=20)


@pytest.fixture
def rng():
    return random.Random(12345)


def random_word(rng, n, alphabet="abcd"):
    return "".join(rng.choice(alphabet) for _ in range(n))


def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    if acceptance is None or not acceptance.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.LINES):
        terminalreporter.write_line(acceptance.LINES[number])
