import numpy as np
import pytest

from lagmesh import (
    GaussianPotential,
    NonrelativisticKinetic,
    ProblemSpec,
    SalpeterKinetic,
    YukawaPotential,
    solve,
)

# mu = 1/2 so that T = p^2: the dimensionless convention used by every
# reference value in the suite.
DIMENSIONLESS = NonrelativisticKinetic(1.0, 1.0)


def gauss15(l=0, size=50, scale=0.5) -> ProblemSpec:
    return ProblemSpec(DIMENSIONLESS, GaussianPotential(15.0, 1.0), l, size, scale)


def yukawa10(l=0, size=200, scale=0.8) -> ProblemSpec:
    return ProblemSpec(DIMENSIONLESS, YukawaPotential(10.0, 1.0), l, size, scale)


def salpeter_gauss(size=50, scale=0.5) -> ProblemSpec:
    return ProblemSpec(SalpeterKinetic(1.0, 1.0), GaussianPotential(3.0, 1.0), 0, size, scale)


@pytest.fixture(scope="session")
def gauss15_ground():
    """Ground state of the g=15 Gaussian benchmark at N=50, h=0.5."""
    return solve(gauss15())[0]


def print_ulp(printed: str) -> float:
    """One unit of the last printed decimal digit of a reference string."""
    mantissa = printed.split("e")[0]
    decimals = len(mantissa.split(".")[1]) if "." in mantissa else 0
    return 10.0 ** (-decimals)


def assert_ulp(value: float, printed: str, units: float = 2.0):
    tol = units * print_ulp(printed)
    assert value == pytest.approx(float(printed), abs=tol), (
        f"{value!r} vs printed {printed} (tol {tol:g})"
    )
