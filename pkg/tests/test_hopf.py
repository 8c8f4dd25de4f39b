from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hopfdsr import hopf
from hopfdsr.hopf import (
    HopfStructure, TensorElement, antipode_apply, antipode_squared, build_twist, check_cocycle,
    check_hopf_axioms, closed_twisted_hopf, compare_hopf, coproduct_apply, dilatation,
    element_series, exp_coeffs, exp_tensor, kappa_pi, kappa_poincare, primitive_hopf, r_matrices,
    tensor_multiply, twist_hopf, wedge,
)
from hopfdsr.pbw import io13_physical
from hopfdsr.scalars import I

N = 4
S = hopf.twist_system()
H0 = primitive_hopf(S)
T = TensorElement.of
one = S.one()
P0, P1, D, L00 = S.gen("P0"), S.gen("P1"), dilatation(S), S.gen("L00")


def e_p0(beta, order=N):
    return element_series(P0.shift(1), exp_coeffs(order, beta), order)


def twisted(kind, p, order=N):
    F = build_twist(kind, order, S, s=p if kind == "abelian" else None,
                    r=p if kind == "jordanian" else None)
    return F, twist_hopf(H0, F, order)


# -- primitive structures -------------------------------------------------------

def test_primitive_coproduct_of_product():
    P = [S.gen(f"P{m}") for m in range(2)]
    d = coproduct_apply(H0, P[0] * P[1])
    expect = T(P[0] * P[1], one) + T(P[0], P[1]) + T(P[1], P[0]) + T(one, P[0] * P[1])
    assert (d - expect).is_zero()


def test_primitive_antipode():
    for m in range(4):
        assert antipode_apply(H0, S.gen(f"P{m}")) == -S.gen(f"P{m}")
    assert antipode_apply(H0, one) == one


def test_primitive_io13_axioms():
    IO = io13_physical()
    assert check_hopf_axioms(primitive_hopf(IO), relations=True).passed


def test_missing_table_entry():
    H = HopfStructure(S, {"P0": H0.coproducts[0]}, {"P0": -P0})
    with pytest.raises(KeyError):
        coproduct_apply(H, P1)
    with pytest.raises(KeyError):
        antipode_apply(H, P1)


@given(st.lists(st.sampled_from(["P0", "P1", "L00", "L01", "L10", "D"]), min_size=1, max_size=3),
       st.lists(st.sampled_from(["P0", "P2", "L02", "L20"]), min_size=1, max_size=2))
def test_antipode_anti_multiplicative(w1, w2):
    a, b = S.word(w1), S.word(w2)
    assert antipode_apply(H0, a * b) == antipode_apply(H0, b) * antipode_apply(H0, a)


@given(st.lists(st.sampled_from(["P0", "P3", "L00", "L30", "D"]), min_size=1, max_size=2),
       st.lists(st.sampled_from(["P1", "L11", "L01"]), min_size=1, max_size=2))
def test_coproduct_multiplicative(w1, w2):
    a, b = S.word(w1), S.word(w2)
    assert (coproduct_apply(H0, a * b) - coproduct_apply(H0, a) * coproduct_apply(H0, b)).is_zero()


# -- kappa-Poincare ------------------------------------------------------------------

def test_kappa_momentum_coproduct():
    K = kappa_poincare(N)
    Sys = K.sys
    pi, _, _ = kappa_pi(Sys, N)
    P1k = Sys.gen("P1")
    expect = T(P1k, pi) + T(Sys.one(), P1k)
    assert (coproduct_apply(K, P1k) - expect).truncate(N).is_zero()


def test_kappa_axioms_low_order():
    K = kappa_poincare(3)
    rep = check_hopf_axioms(K, 3, relations=True)
    assert rep.passed
    assert len([c for c in rep.checks if c.id.startswith("coassociativity")]) == 10


def test_kappa_antipode_square_reported():
    K = kappa_poincare(3)
    s2 = antipode_squared(K, "N1")
    assert s2.is_regular()
    assert s2.classical_limit() == K.sys.gen("N1")


def test_broken_antipode_detected():
    HF = closed_twisted_hopf("abelian", Fraction(1, 2), N, S, printed=False)
    ant = {S.generators[g].name: v for g, v in HF.antipodes.items()}
    cop = {S.generators[g].name: v for g, v in HF.coproducts.items()}
    ant["P1"] = -ant["P1"]
    broken = HopfStructure(S, cop, ant, {}, N)
    rep = check_hopf_axioms(broken, N, generators=["P1"])
    assert not rep["antipode-left(P1)"].passed


# -- twists ---------------------------------------------------------------------------

@pytest.mark.parametrize("s", [Fraction(0), Fraction(1, 3), Fraction(1)])
def test_abelian_first_order(s):
    F = build_twist("abelian", N, S, s=s)
    expect = (T(P0, D).scale(s) - T(D, P0).scale(1 - s)).scale(I)
    assert (F.forward.h_coefficient(1) - expect).is_zero()


@pytest.mark.parametrize("r", [Fraction(-1), Fraction(1), Fraction(2)])
def test_jordanian_first_order(r):
    F = build_twist("jordanian", N, S, r=r)
    J = hopf.jordanian_generator(S, r)
    assert (F.forward.h_coefficient(1) - T(J, P0).scale(-r)).is_zero()


def test_twist_inverse_and_errors():
    F = build_twist("jordanian", N, S, r=2)
    assert (tensor_multiply(F.forward, F.inverse) - TensorElement.unit(S)).truncate(N).is_zero()
    with pytest.raises(ValueError):
        build_twist("jordanian", N, S, r=0)
    with pytest.raises(ValueError):
        build_twist("exponential", N, S, exponent=T(P0, D))


@pytest.mark.parametrize("s", [Fraction(0), Fraction(1, 2), Fraction(1)])
def test_abelian_cocycle(s):
    _, rep = check_cocycle(build_twist("abelian", N, S, s=s), H0, N)
    assert rep.passed


@pytest.mark.parametrize("r", [Fraction(-1), Fraction(2)])
def test_jordanian_cocycle(r):
    _, rep = check_cocycle(build_twist("jordanian", 3, S, r=r), H0, 3)
    assert rep.passed


def test_coboundary_twist_is_cocycle():
    u = S.gen("L01").scale(I).shift(1)
    W = element_series(u, exp_coeffs(N), N)
    F = build_twist("coboundary", N, W=W, hopf=H0)
    _, rep = check_cocycle(F, H0, N)
    assert rep.passed


def test_non_cocycle_is_rejected():
    bad = build_twist("exponential", N, S, exponent=T(S.gen("L01"), S.gen("L10")).shift(1))
    _, rep = check_cocycle(bad, H0, N)
    assert not rep["cocycle"].passed
    with pytest.raises(ValueError):
        twist_hopf(H0, bad, N, check=True)


def test_identity_twist_leaves_structure():
    F = build_twist("identity", N, S)
    HF = twist_hopf(H0, F, N)
    assert compare_hopf(HF, H0, N).passed


@pytest.mark.parametrize("s", [Fraction(0), Fraction(1, 4), Fraction(1)])
def test_abelian_momentum_coproduct_closed_form(s):
    _, HF = twisted("abelian", s)
    expect = T(e_p0(-s), P1) + T(P1, e_p0(1 - s))
    assert (HF.coproducts[S.index["P1"]] - expect).truncate(N).is_zero()


@pytest.mark.parametrize("s", [Fraction(0), Fraction(1, 2), Fraction(1)])
def test_abelian_dilatation_boost_antipode(s):
    _, HF = twisted("abelian", s)
    expect = -L00 - (D * P0).scale(1 - 2 * s).shift(1)
    assert (HF.antipodes[S.index["L00"]] - expect).truncate(N).is_zero()


@pytest.mark.parametrize("kind,p", [("abelian", Fraction(0)), ("abelian", Fraction(1, 2)),
                                    ("abelian", Fraction(1)), ("jordanian", Fraction(1)),
                                    ("jordanian", Fraction(-1))])
def test_closed_tables_amended(kind, p):
    _, HF = twisted(kind, p)
    assert compare_hopf(HF, closed_twisted_hopf(kind, p, N, S, printed=False), N).passed


@pytest.mark.xfail(strict=True, reason="printed Abelian antipodes hold only at s = 1")
def test_abelian_printed_antipode_general_s():
    _, HF = twisted("abelian", Fraction(1, 2))
    expect = -(P1 * e_p0(1))
    assert (HF.antipodes[S.index["P1"]] - expect).truncate(N).is_zero()


def test_abelian_printed_antipode_at_s_one():
    _, HF = twisted("abelian", Fraction(1))
    assert (HF.antipodes[S.index["P1"]] + P1 * e_p0(1)).truncate(N).is_zero()


@pytest.mark.xfail(strict=True, reason="printed Abelian boost tables disagree with the twist for s != 1")
def test_abelian_printed_tables():
    _, HF = twisted("abelian", Fraction(1, 4))
    assert compare_hopf(HF, closed_twisted_hopf("abelian", Fraction(1, 4), N, S, printed=True), N).passed


@pytest.mark.xfail(strict=True, reason="printed Jordanian tables carry the wrong sign on the J_r terms")
def test_jordanian_printed_tables():
    _, HF = twisted("jordanian", Fraction(1))
    assert compare_hopf(HF, closed_twisted_hopf("jordanian", Fraction(1), N, S, printed=True), N).passed


# -- R-matrices and cross-twist identities -----------------------------------------------

def test_abelian_r_matrix_is_exponential_and_s_independent():
    target = exp_tensor(wedge(D, P0).scale(I).shift(1), N)
    for s in (Fraction(0), Fraction(1, 4), Fraction(1)):
        R, r1 = r_matrices(build_twist("abelian", N, S, s=s))
        assert (R - target).truncate(N).is_zero()
        assert (R - TensorElement.unit(S) - r1.shift(1)).truncate(1).is_zero()


@pytest.mark.parametrize("r", [Fraction(-1), Fraction(1), Fraction(2)])
def test_jordanian_classical_r_matrix(r):
    _, r1 = r_matrices(build_twist("jordanian", 3, S, r=r))
    assert (r1 - (wedge(D, P0) - wedge(L00, P0).scale(r)).scale(I)).is_zero()
    assert (r1 + r1.flip()).is_zero()


@pytest.mark.parametrize("r", [Fraction(-1), Fraction(2)])
@pytest.mark.xfail(strict=True, reason="the D^P0/r normalisation matches the twist only at r = 1")
def test_jordanian_classical_r_matrix_printed_normalisation(r):
    _, r1 = r_matrices(build_twist("jordanian", 3, S, r=r))
    assert (r1 - (wedge(D, P0).scale(1 / r) - wedge(L00, P0)).scale(I)).is_zero()


@pytest.mark.parametrize("s1,s2", [(Fraction(0), Fraction(1)), (Fraction(1, 2), Fraction(1, 4))])
def test_abelian_ratio_is_coboundary(s1, s2):
    A1 = build_twist("abelian", N, S, s=s1)
    A2 = build_twist("abelian", N, S, s=s2)
    ratio = tensor_multiply(A1.inverse, A2.forward).truncate(N)
    W = element_series((D * P0).scale(I * (s2 - s1)).shift(1), exp_coeffs(N), N)
    FW = build_twist("coboundary", N, W=W, hopf=H0)
    assert (ratio - FW.forward).truncate(N).is_zero()


@pytest.mark.xfail(strict=True, reason="the opposite coproduct at s = 0 equals the s = 1 coproduct only after h -> -h")
def test_opposite_coproduct_swaps_s_literal():
    _, H_0 = twisted("abelian", Fraction(0))
    _, H_1 = twisted("abelian", Fraction(1))
    for g in H_0.coproducts:
        assert (H_0.coproducts[g].flip() - H_1.coproducts[g]).truncate(N).is_zero()


def _reflect_h(t, order=N):
    out = TensorElement(S, 2, {}, order)
    for k in range(order + 1):
        out = out + t.h_coefficient(k).shift(k).scale((-1) ** k)
    return out


@pytest.mark.parametrize("s", [Fraction(0), Fraction(1, 4)])
def test_opposite_coproduct_reflects_h(s):
    _, Hs = twisted("abelian", s)
    _, Hr = twisted("abelian", 1 - s)
    for g in Hs.coproducts:
        assert (Hs.coproducts[g].flip() - _reflect_h(Hr.coproducts[g])).truncate(N).is_zero()
