import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from persuasion import ExactCoverInstance, Observation, reduce  # noqa: E402

WORKED_ECI_TEXT = "universe 2\nset A1 1\nset A2 2\nset A3 1 2\n"


def obs(*indices):
    """Observation from 1-based event numbers, matching F1, F2, ... names."""
    return Observation(frozenset(i - 1 for i in indices))


@pytest.fixture
def worked_eci():
    return ExactCoverInstance(2, ({1}, {2}, {1, 2}))


@pytest.fixture
def worked_art(worked_eci):
    return reduce(worked_eci)


@pytest.fixture
def worked(worked_art):
    return worked_art.instance


@pytest.fixture
def unsolvable_eci():
    return ExactCoverInstance(3, ({1, 2}, {2, 3}))


@pytest.fixture(scope="session")
def pool():
    with ProcessPoolExecutor(max_workers=3) as ex:
        yield ex
