from __future__ import annotations

import functools

import pytest
from hypothesis import HealthCheck, settings

from nilstring.catalog import burnside_p4, heisenberg, p4_catalog, unitriangular

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def cached_burnside(p: int, which: str):
    return burnside_p4(p, which)


@functools.lru_cache(maxsize=None)
def cached_heisenberg(p: int, k: int):
    return heisenberg(p, k)


@pytest.fixture(scope="session")
def catalog3():
    return p4_catalog(3)


@pytest.fixture(scope="session")
def ut43():
    return unitriangular(4, 3)


@pytest.fixture(scope="session")
def h31():
    return cached_heisenberg(3, 1)


@pytest.fixture(scope="session")
def h32():
    return cached_heisenberg(3, 2)


@pytest.fixture(scope="session")
def group_a():
    return cached_burnside(3, "A")
