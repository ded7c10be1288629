import functools

import pytest

from hermsurf.field import FieldCtx
from hermsurf.hermitian import canonical_surface


@functools.lru_cache(maxsize=None)
def ctx_for(q):
    return FieldCtx.from_q(q)


@functools.lru_cache(maxsize=None)
def surface_for(q):
    return canonical_surface(ctx_for(q))


@pytest.fixture(scope="session")
def S2():
    return surface_for(2)


@pytest.fixture(scope="session")
def S3():
    return surface_for(3)


@pytest.fixture(scope="session")
def S4():
    return surface_for(4)


@pytest.fixture(scope="session")
def S8():
    return surface_for(8)
