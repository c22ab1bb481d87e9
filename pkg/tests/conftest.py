import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from roadgeom import gen_gotham, gen_hub_spoke, gen_random_geometric


@pytest.fixture(scope="session")
def gotham_small():
    return gen_gotham(16, 2, seed=20260808)


@pytest.fixture(scope="session")
def gotham_medium():
    return gen_gotham(32, 4, seed=20260808)


@pytest.fixture(scope="session")
def rgg_small():
    return gen_random_geometric(80, 0.16, seed=4)


@pytest.fixture(scope="session")
def rgg_medium():
    return gen_random_geometric(200, 0.11, seed=9)


@pytest.fixture(scope="session")
def hub_small():
    return gen_hub_spoke(16, 9, seed=2)
