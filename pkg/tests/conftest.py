import pytest
from hypothesis import HealthCheck, settings

import diskharm as dh

settings.register_profile(
    "suite", max_examples=25, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")


@pytest.fixture(scope="session")
def fields():
    """One extension per preset, shared so circle caches amortize."""
    return {name: dh.extend(dh.preset(name)) for name in dh.list_presets()}


@pytest.fixture(scope="session")
def abs_sin_field(fields):
    return fields["abs-sin"]
