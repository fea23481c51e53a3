import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chambers.instances import gq22_flag_building, pg2_flag_building, rank1_building  # noqa: E402


@pytest.fixture(scope="session")
def pg2():
    return pg2_flag_building(2)


@pytest.fixture(scope="session")
def pg3():
    return pg2_flag_building(3)


@pytest.fixture(scope="session")
def gq():
    return gq22_flag_building()


@pytest.fixture(scope="session")
def rank1_4():
    return rank1_building(4)
