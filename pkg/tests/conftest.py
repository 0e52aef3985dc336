import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture()
def hexagon():
    from latdiam.generators import gen_hexagon_power

    return gen_hexagon_power(2)


@pytest.fixture()
def octagon():
    from latdiam.generators import gen_octagon3

    return gen_octagon3()


@pytest.fixture()
def unit_square():
    from latdiam.generators import gen_hypercube

    return gen_hypercube(2, 1)


@pytest.fixture()
def cube():
    from latdiam.generators import gen_hypercube

    return gen_hypercube(3, 1)
