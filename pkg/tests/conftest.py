import pytest
from hypothesis import HealthCheck, settings

from evolutes import preset

settings.register_profile(
    "suite", deadline=None, max_examples=50,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("suite")


@pytest.fixture(scope="session")
def knot():
    return preset("torus-knot")


@pytest.fixture(scope="session")
def helix():
    return preset("helix")


@pytest.fixture(scope="session")
def fig8():
    return preset("fig8")


@pytest.fixture(scope="session")
def ell_helix():
    return preset("elliptical-helix")


@pytest.fixture(scope="session")
def cusp_curve():
    return preset("cusp-curve")


@pytest.fixture(scope="session")
def spherical():
    return preset("spherical")
