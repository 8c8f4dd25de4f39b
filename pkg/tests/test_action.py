from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hopfdsr import action, hopf
from hopfdsr.action import (
    act, check_covariance, coordinate_algebra, covariance_shift_residual, crossed_commutator_table,
    compare_crossed, hat_coordinates, igl_action, poly_from_exponents, smash_cross_relations,
    star_commutator, star_product, star_relations,
)
from hopfdsr.scalars import I

N = 3
S = hopf.twist_system()
H0 = hopf.primitive_hopf(S)
A = igl_action(H0)
X = A.module
x = [X.gen(f"x{m}") for m in range(4)]


def twist(kind, p, order=N):
    return hopf.build_twist(kind, order, S, s=p if kind == "abelian" else None,
                            r=p if kind == "jordanian" else None)


polys = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 4),
                        st.fractions(-3, 3, max_denominator=3), min_size=1, max_size=3
                        ).map(lambda d: poly_from_exponents(X, d))


# -- classical action -----------------------------------------------------------------

@pytest.mark.parametrize("mu,nu,lam", [(0, 0, 1), (1, 1, 1), (2, 0, 3)])
def test_momentum_on_quadratic(mu, nu, lam):
    delta = lambda a, b: 1 if a == b else 0
    got = act(A, S.gen(f"P{mu}"), x[nu] * x[lam])
    expect = x[lam].scale(-I * delta(nu, mu)) + x[nu].scale(-I * delta(lam, mu))
    assert got == expect


def test_gl_on_coordinate():
    assert act(A, S.gen("L12"), x[2]) == x[1].scale(-I)
    assert act(A, S.gen("L12"), x[3]).is_zero()
    assert act(A, S.gen("L03"), x[3]) == x[0].scale(-I)


def test_unit_acts_trivially():
    f = x[0] * x[1] + x[2].scale(Fraction(1, 3))
    assert act(A, S.one(), f) == f


def test_counit_on_constants():
    assert act(A, S.gen("P2"), X.one()).is_zero()


@given(polys, polys, st.sampled_from(["P0", "P1", "L01", "L22", "D", "L30"]))
def test_leibniz_rule(f, g, name):
    L = S.gen(name)
    lhs = act(A, L, f * g)
    rhs = act(A, L, f) * g + f * act(A, L, g)
    assert lhs == rhs


@given(polys, st.sampled_from(["P0", "L01", "D"]), st.sampled_from(["P1", "L10", "L00"]))
def test_action_is_representation(f, a, b):
    La, Lb = S.gen(a), S.gen(b)
    assert act(A, La * Lb, f) == act(A, La, act(A, Lb, f))


# -- star products ------------------------------------------------------------------------

def test_trivial_twist_star_is_pointwise():
    F = hopf.build_twist("identity", N, S)
    f, g = x[0] * x[1], x[2] + x[0]
    assert star_product(F, A, f, g) == f * g


@pytest.mark.parametrize("kind,p", [("abelian", Fraction(0)), ("abelian", Fraction(1, 2)),
                                    ("abelian", Fraction(1)), ("jordanian", Fraction(1)),
                                    ("jordanian", Fraction(-1))])
def test_kappa_minkowski_star_relations(kind, p):
    F = twist(kind, p)
    for k in (1, 2, 3):
        assert (star_commutator(F, A, x[0], x[k]) - x[k].scale(I).shift(1)).truncate(N).is_zero()
        for j in range(1, k):
            assert star_commutator(F, A, x[j], x[k]).truncate(N).is_zero()


def test_star_h1_is_poisson():
    F = twist("abelian", Fraction(1, 2))
    assert action.poisson_h1_antisymmetric(F, A, x[0], x[2]) == x[2].scale(I)


@given(polys, polys, polys)
def test_star_associative(f, g, k):
    F = twist("jordanian", Fraction(1), 2)
    left = star_product(F, A, star_product(F, A, f, g), k)
    right = star_product(F, A, f, star_product(F, A, g, k))
    assert (left - right).truncate(2).is_zero()


# -- covariance ---------------------------------------------------------------------------

def test_classical_covariance_commutative():
    assert check_covariance(A).passed


def test_kappa_covariance_with_h_shift():
    assert covariance_shift_residual(N, a=-1, coeff=1, hpow=1).passed


def test_kappa_covariance_fails_without_h():
    rep = covariance_shift_residual(N, a=-1, coeff=1, hpow=0)
    assert not rep.passed


# -- smash products and hat coordinates -------------------------------------------------------

def test_smash_cross_relations_weyl():
    Ssm, rels = smash_cross_relations(H0, A)
    rels = dict(rels)
    assert rels[("P0", "x0")] == Ssm.one().scale(-I)
    assert rels[("L01", "x1")] == Ssm.gen("x0").scale(-I)
    assert rels[("P1", "x2")].is_zero()


@pytest.mark.parametrize("kind,p", [("abelian", Fraction(0)), ("abelian", Fraction(1, 2)),
                                    ("jordanian", Fraction(1))])
def test_hat_coordinates(kind, p):
    F = twist(kind, p)
    hc = hat_coordinates(F, A)
    assert hc.roundtrip.passed
    xh = hc.xhat
    for k in (1, 2, 3):
        assert (xh[0] * xh[k] - xh[k] * xh[0] - xh[k].scale(I).shift(1)).truncate(N).is_zero()
        for j in range(1, k):
            assert (xh[j] * xh[k] - xh[k] * xh[j]).truncate(N).is_zero()


def _crossed(kind, p, printed):
    F = twist(kind, p)
    HF = hopf.twist_hopf(H0, F, N)
    Ssm, rels = smash_cross_relations(HF, A, star_relations(F, A))
    table = crossed_commutator_table(kind, p, Ssm, N, printed=printed)
    return compare_crossed(dict(rels), table, N)


@pytest.mark.parametrize("kind,p", [("abelian", Fraction(0)), ("abelian", Fraction(1, 2)),
                                    ("abelian", Fraction(1)), ("jordanian", Fraction(1)),
                                    ("jordanian", Fraction(2))])
def test_crossed_tables_amended(kind, p):
    assert _crossed(kind, p, printed=False).passed


@pytest.mark.xfail(strict=True, reason="printed Abelian crossed table mis-signs [x^k, L^0_k] and [x^0, L^k_0]")
def test_crossed_table_printed_abelian():
    assert _crossed("abelian", Fraction(1, 2), printed=True).passed


@pytest.mark.xfail(strict=True, reason="printed Jordanian crossed table mis-signs every L^0_0 and L^0_k entry")
def test_crossed_table_printed_jordanian():
    assert _crossed("jordanian", Fraction(1), printed=True).passed


def test_coordinate_algebra_commutative():
    P = coordinate_algebra(3)
    a, b = P.gen("x0"), P.gen("x2")
    assert a * b == b * a
