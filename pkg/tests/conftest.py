import numpy as np
import pytest
from hypothesis import settings

from phigamma import RingParams

settings.register_profile("default", max_examples=30, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def p3():
    return RingParams(3, 1)


@pytest.fixture
def f9():
    # F_9 with g^2 = g + 1
    return RingParams(3, 1, 2)


ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance_line(request):
    """Record the one-line verdict of an acceptance criterion."""
    lines = request.config.stash.setdefault(ACCEPTANCE, {})

    def record(number: int, ok: bool, detail: str):
        lines[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(lines):
        terminalreporter.write_line(lines[k])
