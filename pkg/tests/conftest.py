import os

import pytest

from linsetlab import build_tower


def pytest_collection_modifyitems(config, items):
    if os.environ.get("LINSETLAB_SLOW"):
        return
    skip = pytest.mark.skip(reason="long-running; set LINSETLAB_SLOW=1 to enable")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def tower2():
    return build_tower(2, 1)


@pytest.fixture(scope="session")
def tower3():
    return build_tower(3, 1)


@pytest.fixture(scope="session")
def tower4():
    return build_tower(2, 2)


@pytest.fixture(scope="session")
def q2_exhaustive_census(tower2):
    from linsetlab.constructions import census

    return census(tower2, "exhaustive_all")
