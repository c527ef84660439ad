import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from svrisk.fixtures import market, position


@pytest.fixture(scope="session")
def mkt_a():
    return market("mkt-a")


@pytest.fixture(scope="session")
def mkt_b():
    return market("mkt-b")


@pytest.fixture(scope="session")
def mkt_1d():
    return market("mkt-1d")


@pytest.fixture(scope="session")
def wc_fixture_position():
    return position("wc-fixture")


@pytest.fixture(scope="session")
def var_fixture_position():
    return position("var-fixture")
