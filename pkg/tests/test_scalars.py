from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hopfdsr.scalars import (
    GaussianRational, HSeries, TaylorSeries, build_psi_gamma, hseries_arith,
    hseries_functions, parse_gaussian, ultra_norm,
)

from conftest import gaussians, hseries, o_h, units

N = 6
h = HSeries.h(N)
one = HSeries.constant(1, N)


def _fact(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


# -- Gaussian rationals ------------------------------------------------------

def test_gaussian_reduction_and_parts():
    z = GaussianRational(Fraction(2, 4), Fraction(-6, 8))
    assert z.re == Fraction(1, 2) and z.im == Fraction(-3, 4)
    assert GaussianRational(0, 1) * GaussianRational(0, 1) == -1


def test_parse_gaussian_literal():
    assert parse_gaussian("1/2+3/4 i") == GaussianRational(Fraction(1, 2), Fraction(3, 4))
    assert parse_gaussian("-i") == GaussianRational(0, -1)
    with pytest.raises(ValueError):
        parse_gaussian("0.1.2")
    with pytest.raises(ValueError):
        parse_gaussian("2 i i")


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if a:
        assert a * a.inverse() == 1


def test_gaussian_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0).inverse()


# -- HSeries arithmetic -------------------------------------------------------

def test_add_disjoint_supports():
    s = hseries_arith(h, h * h, "add")
    assert s.dense() == [0, 1, 1, 0, 0, 0, 0]


def test_mul_difference_of_squares():
    assert hseries_arith(one + h, one - h, "mul") == one - h * h


def test_invert_geometric():
    inv = hseries_arith(one - h, None, "invert")
    assert inv.dense() == [1] * (N + 1)
    assert (inv * (one - h)) == one


def test_invert_zero_raises():
    with pytest.raises(ZeroDivisionError):
        HSeries([], N).invert()


def test_order_mismatch_raises():
    with pytest.raises(ValueError):
        HSeries([1], 4) + HSeries([1], 5)


def test_division_by_h_lowers_effective_order():
    s = (one + h).shift(-1)
    assert s.low == -1 and s.eff == N - 1
    assert not s.is_regular()


@given(hseries(), hseries(), hseries())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@given(hseries(min_low=-2), hseries(min_low=-2))
def test_inverse_on_principal_parts(a, b):
    if a.is_zero():
        return
    prod = a * a.invert()
    assert prod.equals(HSeries.constant(1, a.order))


# -- series functions ---------------------------------------------------------

def test_exp_log_inverse_pair():
    assert hseries_functions(hseries_functions(one + h, "log"), "exp") == one + h


def test_pow_minus_one_is_geometric():
    assert hseries_functions(one - h, "pow", -1).dense() == [1] * (N + 1)


def test_pow_half_binomial_recurrence():
    s = hseries_functions(one - h * 2, "pow", Fraction(1, 2))
    c = Fraction(1)
    for m in range(N):
        assert s[m] == c
        c = c * (Fraction(1, 2) - m) * (-2) / (m + 1)


def test_compose_with_log():
    # exp(log(1+h)) built by composition with the exp coefficients
    f = HSeries([Fraction(1, _fact(k)) for k in range(N + 1)], N)
    g = (one + h).log()
    assert f.compose(g) == one + h


@pytest.mark.parametrize("bad", ["exp", "log", "pow"])
def test_function_domain_errors(bad):
    with pytest.raises(ValueError):
        hseries_functions(HSeries([2, 1], N), bad, Fraction(1, 2))


@given(units())
def test_exp_log_roundtrip_units(f):
    assert f.log().exp() == f


@given(o_h())
def test_log_exp_roundtrip(g):
    assert g.exp().log() == g


# -- ultra-norm ---------------------------------------------------------------

@pytest.mark.parametrize("k", range(5))
def test_ultra_norm_powers_of_h(k):
    assert ultra_norm(HSeries.h(N, k)) == Fraction(1, 2**k)


def test_ultra_norm_zero_and_unit():
    assert ultra_norm(HSeries([], N)) == 0
    assert ultra_norm(HSeries([3, 1], N)) == 1


@given(hseries(order=12), hseries(order=12))
def test_ultra_norm_multiplicative(a, b):
    assert ultra_norm(a * b) == ultra_norm(a) * ultra_norm(b)


@given(hseries(), hseries())
def test_ultra_norm_ultrametric(a, b):
    assert ultra_norm(a + b) <= max(ultra_norm(a), ultra_norm(b))


# -- Taylor series and Psi/Gamma ----------------------------------------------

def test_psi_one_gives_exponential():
    Psi, Gamma = build_psi_gamma(TaylorSeries([1], N), TaylorSeries([0], N))
    assert list(Psi.coeffs) == [Fraction(1, _fact(n)) for n in range(N + 1)]
    assert list(Gamma.coeffs) == [1] + [0] * N


@pytest.mark.parametrize("r", [Fraction(1), Fraction(-1, 2), Fraction(3)])
def test_linear_psi_gives_power(r):
    Psi, _ = build_psi_gamma(TaylorSeries([1, r], N), TaylorSeries([0], N))
    # (1 + r t)^(1/r) by the generalised binomial theorem, expanded independently
    beta = 1 / r
    binom = [Fraction(1)]
    for m in range(N):
        binom.append(binom[-1] * (beta - m) / (m + 1))
    assert list(Psi.coeffs) == [binom[m] * r**m for m in range(N + 1)]


@pytest.mark.parametrize("s", [Fraction(0), Fraction(1, 2), Fraction(-2)])
def test_constant_gamma_gives_exponential(s):
    _, Gamma = build_psi_gamma(TaylorSeries([1], N), TaylorSeries([s], N))
    assert list(Gamma.coeffs) == [s**n / _fact(n) for n in range(N + 1)]


def test_psi_gamma_requires_unit_psi():
    with pytest.raises(ValueError):
        build_psi_gamma(TaylorSeries([2], N), TaylorSeries([0], N))


@given(st.lists(st.fractions(-3, 3, max_denominator=5), max_size=3),
       st.lists(st.fractions(-3, 3, max_denominator=5), max_size=3))
def test_psi_gamma_normalised(ps, gs):
    Psi, Gamma = build_psi_gamma(TaylorSeries([1] + ps, N), TaylorSeries(gs, N))
    assert Psi[0] == 1 and Gamma[0] == 1
    # d/dt log Psi = 1/psi
    psi = TaylorSeries([1] + ps, N)
    lhs = (Psi.derivative() * psi).coeffs[: N]
    assert list(lhs) == list(Psi.coeffs[: N])


def test_taylor_parse_rejects_complex():
    with pytest.raises(ValueError):
        TaylorSeries.parse("1, i")
    assert TaylorSeries.parse("1, -1/2, 3/4").coeffs[:3] == (1, Fraction(-1, 2), Fraction(3, 4))
