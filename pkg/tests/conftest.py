import cmath
import os
from fractions import Fraction

from hypothesis import HealthCheck, settings

from osforest.exact import Cyclotomic

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def to_complex(x) -> complex:
    """Floating evaluation of an exact scalar; an independent numeric route."""
    if isinstance(x, Cyclotomic):
        return sum(float(c) * cmath.exp(2j * cmath.pi * k / x.m) for k, c in enumerate(x.coeffs))
    if isinstance(x, complex):
        return x
    return complex(float(Fraction(x)))


def close(a, b, tol=1e-9) -> bool:
    return abs(to_complex(a) - to_complex(b)) < tol


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
