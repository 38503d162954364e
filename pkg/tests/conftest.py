import pytest

from torquiv import Fan, make_variety, smooth_fano


def fan_p2():
    return Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))


def fan_weighted_112():
    # P(1,1,2): u0 + u1 + 2 u2 = 0
    return Fan(2, ((1, 0), (-1, -2), (0, 1)), ((0, 1), (1, 2), (0, 2)))


@pytest.fixture
def p2():
    return make_variety(fan_p2())


@pytest.fixture
def p112():
    return make_variety(fan_weighted_112())


@pytest.fixture(scope="session")
def dp6():
    return smooth_fano(2, 4)
