import pytest

import fqdist


@pytest.fixture(scope="session")
def gf9():
    return fqdist.ExtField(3, 2)


@pytest.fixture(scope="session")
def gf729():
    return fqdist.ExtField(3, 6)


@pytest.fixture(scope="session")
def c31():
    """The smallest full construction: p=3, r=1, q=729."""
    return fqdist.build_construction(3, 1)
