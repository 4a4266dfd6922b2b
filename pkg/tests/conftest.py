import mpmath
import pytest
from mpmath import mpf

from sincprod.precision import PrecisionContext


@pytest.fixture
def ctx50():
    return PrecisionContext(digits=50)


@pytest.fixture
def ctx30():
    return PrecisionContext(digits=30)


def assert_close(value, reference, tol, label=""):
    with mpmath.workdps(max(mpmath.mp.dps, 60)):
        err = abs(mpf(value) - mpf(reference))
        assert err <= mpf(str(tol)), f"{label}: |{value} - {reference}| = {err} > {tol}"
