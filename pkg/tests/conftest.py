import pytest

from boundgen.rings import RingSpec


@pytest.fixture
def z():
    return RingSpec.integers()


@pytest.fixture
def z12():
    return RingSpec.residue(12)


@pytest.fixture
def z6():
    return RingSpec.residue(6)


@pytest.fixture
def f7():
    return RingSpec.prime_field(7)
