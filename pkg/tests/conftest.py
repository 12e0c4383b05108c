import cmath

import pytest

from apolylab import StepControls, parse_poly, roots_in_l

FIG8_A = "m^4*l^2 - (m^8 - m^6 - 2*m^4 - m^2 + 1)*l + m^4"


@pytest.fixture(scope="session")
def fig8():
    return parse_poly(FIG8_A)


@pytest.fixture(scope="session")
def fig8_text():
    return FIG8_A


@pytest.fixture
def ctrl():
    return StepControls()


def small_root(poly, m):
    """Sheet with the smaller |l| at m."""
    return sorted(roots_in_l(poly, m), key=abs)[0]


def big_root(poly, m):
    return sorted(roots_in_l(poly, m), key=abs)[-1]


def unit(theta: float) -> complex:
    return cmath.exp(1j * theta)
