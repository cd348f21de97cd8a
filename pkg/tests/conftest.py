import os

import pytest
from hypothesis import HealthCheck, settings

from composed_factor.field import make_extension, make_prime_field
from composed_factor.poly import Poly

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPOTHESIS_MAX_EXAMPLES", "40")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def F2():
    return make_prime_field(2)


@pytest.fixture(scope="session")
def F3():
    return make_prime_field(3)


@pytest.fixture(scope="session")
def F5():
    return make_prime_field(5)


@pytest.fixture(scope="session")
def F11():
    return make_prime_field(11)


@pytest.fixture(scope="session")
def F9(F3):
    return make_extension(F3, Poly.from_list(F3, [1, 0, 1]))


@pytest.fixture(scope="session")
def cubic14(F11):
    """x^3+4x^2+6x+1, irreducible of order 14 over F_11."""
    return Poly.from_list(F11, [1, 6, 4, 1])


@pytest.fixture(scope="session")
def cubic14_partner(F11):
    """x^3+6x^2+4x+1, the other factor of Phi_14 over F_11."""
    return Poly.from_list(F11, [1, 4, 6, 1])


def P(ctx, *coeffs):
    return Poly.from_list(ctx, list(coeffs))
