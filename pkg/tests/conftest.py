import numpy as np
import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from appellf4.params import HypergeometricParams, genericity_check

settings.register_profile(
    "default", max_examples=25, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("default")

DEFAULT = HypergeometricParams(0.31, 0.47, 0.62, 0.79)
SAMPLE = HypergeometricParams(0.3, 0.41, 0.53, 0.67)


def _draw(rng):
    while True:
        p = HypergeometricParams(*(complex(rng.uniform(0.1, 0.9), rng.uniform(-0.3, 0.3))
                                   for _ in range(4)))
        if genericity_check(p, 0.05).generic:
            return p


def random_generic(seed: int, n: int):
    rng = np.random.default_rng(seed)
    return [_draw(rng) for _ in range(n)]


_part = st.builds(complex, st.floats(0.1, 0.9), st.floats(-0.3, 0.3))


@st.composite
def generic_params(draw):
    p = HypergeometricParams(draw(_part), draw(_part), draw(_part), draw(_part))
    assume(genericity_check(p, 0.05).generic)
    return p


points = st.tuples(st.floats(0.01, 0.1), st.floats(0.01, 0.1))


@pytest.fixture
def p_default():
    return DEFAULT
