import pytest
from hypothesis import HealthCheck, settings

from superkoszul.description import bundled, load_description

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def gl11_desc():
    return load_description(bundled("gl11.shcp"))


@pytest.fixture(scope="session")
def gl11(gl11_desc):
    return gl11_desc.pair


@pytest.fixture(scope="session")
def torus():
    return load_description(bundled("torus.shcp")).pair


@pytest.fixture(scope="session")
def nil3():
    return load_description(bundled("nilpotent_q3.shcp")).pair


@pytest.fixture(scope="session")
def bracket_mutant():
    return load_description(bundled("mutations/gl11_bracket.shcp"))


@pytest.fixture(scope="session")
def sigma_mutant():
    return load_description(bundled("mutations/gl11_sigma_identity.shcp"))
