import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from enumeration_module.masks import enumerate_masks
from grid_module.grid import validate


LONG_RUN = os.environ.get("CROSSGRAPH_LONG_RUN") == "1"


def pytest_collection_modifyitems(config, items):
    if LONG_RUN:
        return
    skip = pytest.mark.skip(reason="set CROSSGRAPH_LONG_RUN=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def masks_n2():
    return list(enumerate_masks(2))


@pytest.fixture(scope="session")
def valid_grids_n2(masks_n2):
    grids = [m.to_grid() for m in masks_n2]
    return [g for g in grids if validate(g).valid]
