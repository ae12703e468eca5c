import numpy as np
import pytest

from detsurf.detpoly import HomogeneousPolynomial, det_poly, sign_normalize
from detsurf.fixtures import fixture


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture
def unit_ball_poly():
    # (x^2 + y^2 + z^2)^2: the constant surface is the unit sphere
    return HomogeneousPolynomial(
        4, {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1, (2, 2, 0): 2, (2, 0, 2): 2, (0, 2, 2): 2}
    )


@pytest.fixture
def x4_poly():
    return HomogeneousPolynomial(4, {(4, 0, 0): 1})


@pytest.fixture
def flatcap_poly():
    # (x^2 + y^2)^2 + z^4: convex with flat points at the poles and equator
    return HomogeneousPolynomial(4, {(4, 0, 0): 1, (0, 4, 0): 1, (2, 2, 0): 2, (0, 0, 4): 1})


@pytest.fixture(scope="session")
def t001_poly():
    return sign_normalize(det_poly(fixture("T001")))


@pytest.fixture(scope="session")
def t020_poly():
    return sign_normalize(det_poly(fixture("T020")))
