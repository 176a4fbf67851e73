import contextlib

import pytest

from timedarts.modelgen import random_suite

_ACCEPTANCE = []


@contextlib.contextmanager
def criterion(number, title):
    """Record a PASS/FAIL line for an acceptance criterion."""
    try:
        yield
    except BaseException as exc:
        _ACCEPTANCE.append((number, title, f"FAIL ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"))
        raise
    _ACCEPTANCE.append((number, title, "PASS"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"[{status.split()[0]}] criterion {number}: {title} {status if status != 'PASS' else ''}".rstrip())


@pytest.fixture(scope="session")
def random_models():
    """500 seeded (params, model, goal) triples: <= 3 clocks, <= 6 locations, bounds <= 4."""
    return list(random_suite(500, seed=2024, max_clocks=3, max_locations=6, max_bound=4))
