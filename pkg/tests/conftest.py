import pytest

from cft_construct.interfaces.cli.config import JobConfig, run_job
from cft_construct.interfaces.cli.fixtures import load_fixture
from cft_construct.modules.base_field import BaseField


@pytest.fixture(scope="session")
def Q() -> BaseField:
    return BaseField.rational()


@pytest.fixture(scope="session")
def K47() -> BaseField:
    return BaseField.imag_quadratic(-47)


@pytest.fixture(scope="session")
def biquadratic_fixture():
    return load_fixture("rational_biquadratic")


@pytest.fixture(scope="session")
def imag47_fixture():
    return load_fixture("imag_quadratic_47")


@pytest.fixture(scope="session")
def biquadratic_data(biquadratic_fixture):
    """Q, G = (Z/2)^2, alpha = 37/16, nothing pinned."""
    return run_job(biquadratic_fixture.job)


@pytest.fixture(scope="session")
def imag47_data(imag47_fixture):
    """Q(sqrt(-47)), G = Z/6 x (Z/3)^3, alpha = 2+3*sqrt(-47), every choice pinned."""
    return run_job(imag47_fixture.job)


@pytest.fixture(scope="session")
def imag47_free_data():
    """Q(sqrt(-47)), G = Z/6 x (Z/3)^3, alpha = 2+3*sqrt(-47), nothing pinned."""
    return run_job(JobConfig(d=-47, group=[6, 3, 3, 3], alphas=["2+3*sqrt(-47)"]))
