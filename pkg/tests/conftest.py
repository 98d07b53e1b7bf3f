from __future__ import annotations

import pytest

from gean import PhysicsSpec, default_limits


@pytest.fixture(scope="session")
def limits2():
    return default_limits(PhysicsSpec(), dims=2)


@pytest.fixture(scope="session")
def limits3():
    return default_limits(PhysicsSpec(), dims=3)
