"""
Shared pytest configuration: hypothesis profiles, the slow marker and
algebra fixtures. Session parameters are reset around every test.
"""

import hypothesis
import numpy as np
import pytest

from ptwists.config.parameters import params
from ptwists.model.algebra import build_pnk_algebra, build_two_object_algebra
from ptwists.model.spherify import build_spherification_algebra

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=100, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False, deadline=None)
hypothesis.settings.load_profile("fast")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale acceptance runs (minutes)")


def pytest_collection_modifyitems(config, items):
    # slow runs only when asked for with -m
    if config.option.markexpr:
        return
    skip_slow = pytest.mark.skip(reason="slow: run with -m slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def fresh_params():
    params.reset()
    params.workers = 1
    yield params
    params.reset()


@pytest.fixture
def p22():
    """k[t]/t^3 with deg t = 2."""
    return build_pnk_algebra(2, 2)


@pytest.fixture
def sphere_algebra():
    """k[t]/t^2 with deg t = 2: the 2-spherical case n = 1."""
    return build_pnk_algebra(1, 2)


@pytest.fixture
def pair():
    """Two P^2[2]-objects with one map each way in degree 2."""
    return build_two_object_algebra(2, 2, 1)


@pytest.fixture
def orthogonal_pair():
    return build_two_object_algebra(2, 2, 0)


@pytest.fixture
def pair_spherification(pair):
    return build_spherification_algebra(pair)
