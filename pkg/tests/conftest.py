from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from hopfdsr.scalars import GaussianRational, HSeries

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
gaussians = st.builds(GaussianRational, small_fractions, small_fractions)


def hseries(order=5, min_low=0, size=4):
    return st.builds(
        lambda cs, low: HSeries(cs, order, low),
        st.lists(gaussians, min_size=0, max_size=size),
        st.integers(min_value=min_low, max_value=2),
    )


def units(order=5):
    """Series with constant term 1."""
    return st.lists(gaussians, max_size=4).map(lambda cs: HSeries([1] + cs, order))


def o_h(order=5):
    """Series with zero constant term."""
    return st.lists(gaussians, max_size=4).map(lambda cs: HSeries([0] + cs, order))


F = Fraction
