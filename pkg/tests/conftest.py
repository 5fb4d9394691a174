import pytest

from rswan.local_field import field_from_descriptor


_FIELDS = {}


def named_field(name, precision=None):
    key = (name, precision)
    if key not in _FIELDS:
        _FIELDS[key] = field_from_descriptor(name, precision=precision)
    return _FIELDS[key]


@pytest.fixture(scope="session")
def Q2():
    return named_field("Q2")


@pytest.fixture(scope="session")
def Q2i():
    return named_field("Q2i")


@pytest.fixture(scope="session")
def Q2c():
    return named_field("Q2c")


@pytest.fixture(scope="session")
def Q2u2():
    return named_field("Q2u2")


@pytest.fixture(scope="session")
def Q3z():
    return named_field("Q3z")
