import random

import pytest

from helpers import SEED
from msidx import _backend


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(params=_backend.available())
def core(request):
    return _backend.load(request.param)


def pytest_terminal_summary(terminalreporter):
    from helpers import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
