import time
from contextlib import contextmanager

import pytest

from linarr.tree import from_head_vector

EXAMPLE_HEADS = (2, 4, 4, 0, 7, 7, 4)

# criterion number -> (passed, description, detail), filled by test_acceptance
ACCEPTANCE: dict[str, tuple[bool, str, str]] = {}


def pytest_addoption(parser):
    parser.addoption("--longrun", action="store_true", default=False,
                     help="run the hours-scale n=11 sweep")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--longrun"):
        return
    skip = pytest.mark.skip(reason="needs --longrun")
    for item in items:
        if "longrun" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split(".")[0]), k)):
        passed, desc, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {key}. {desc}: {detail}")


@pytest.fixture
def criterion():
    """Record one acceptance line; the body fails the line by raising."""

    @contextmanager
    def record(key: str, description: str):
        note = {"detail": ""}
        try:
            yield note
        except BaseException as exc:
            ACCEPTANCE[key] = (False, description, f"{type(exc).__name__}: {exc}"[:300])
            raise
        ACCEPTANCE[key] = (True, description, note["detail"])

    return record


@pytest.fixture(scope="session")
def example_tree():
    return from_head_vector(EXAMPLE_HEADS)


@pytest.fixture(scope="session")
def timed_records():
    """Sweep extrema for n = 2..10 and the wall time it took (n=10 dominates)."""
    from linarr.oracle import sweep_extrema

    start = time.perf_counter()
    recs = {n: sweep_extrema(n) for n in range(2, 11)}
    return recs, time.perf_counter() - start


@pytest.fixture(scope="session")
def records(timed_records):
    return timed_records[0]
