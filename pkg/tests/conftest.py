import random

import pytest

from torusmaps.constructions import CATALOGUE_NAMES, catalogue


@pytest.fixture(scope="session")
def cat():
    return {name: catalogue(name) for name in CATALOGUE_NAMES}


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
