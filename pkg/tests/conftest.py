import functools

import pytest

from nfreg.corpus import load_corpus


@functools.lru_cache(maxsize=None)
def _corpus():
    return {rec.label: rec for rec in load_corpus()}


@pytest.fixture(scope="session")
def corpus():
    return _corpus()


def record(label):
    return _corpus()[label]


ACCEPTANCE_LINES: dict = {}


def report_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
