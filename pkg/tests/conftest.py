"""Shared fixtures, the hypothesis profile, and the acceptance summary."""

import contextlib

import pytest
from hypothesis import settings

import helpers

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")

_acceptance_lines: list[str] = []


@pytest.fixture
def acceptance():
    """Context manager recording one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def criterion(number: int, label: str):
        try:
            yield
        except BaseException:
            _record(number, "FAIL", label)
            raise
        else:
            _record(number, "PASS", label)

    return criterion


def _record(number: int, status: str, label: str) -> None:
    line = f"ACCEPTANCE {number:2d}: {status}  {label}"
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)


@pytest.fixture
def star4():
    return helpers.star_tree(4)


@pytest.fixture
def star5():
    return helpers.star_tree(5)


@pytest.fixture
def caterpillar():
    return helpers.caterpillar5(("a", "b", "c"))


@pytest.fixture
def cherry_tree():
    return helpers.cherry5()


@pytest.fixture
def two_cycle():
    return helpers.two_cycle_map()
