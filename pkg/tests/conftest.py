import pytest

import specpair as sp


@pytest.fixture(scope="session")
def scale4():
    return sp.parse_spec("scale4")


@pytest.fixture(scope="session")
def scale4x2():
    return sp.parse_spec("scale4x2")


@pytest.fixture(scope="session")
def middlethird():
    return sp.parse_spec("middlethird", require_valid=False)
