import numpy as np
import pytest

from rigidangles import ScalarField, standard_form, validate_gram

SKEW = np.array([[1.0, -0.5], [-0.5, 0.5]])


@pytest.fixture
def skew():
    return validate_gram(ScalarField.REAL, SKEW)


@pytest.fixture
def r2():
    return standard_form(ScalarField.REAL, 2)


@pytest.fixture
def c1():
    return standard_form(ScalarField.COMPLEX, 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=[ScalarField.REAL, ScalarField.COMPLEX], ids=["real", "complex"])
def field(request):
    return request.param
