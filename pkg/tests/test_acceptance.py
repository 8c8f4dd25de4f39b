"""Acceptance criteria 1-11.

Each criterion prints one PASS/FAIL line.  Where a closed-form formula is
contradicted by the engine, the literal form is kept as a strict xfail that
prints its own FAIL line, and the criterion line reports the corrected form.
"""
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from hopfdsr import action, hopf, pheno, qanalog, realizations as rz
from hopfdsr.cli import ABELIAN_SET, JORDANIAN_SET
from hopfdsr.report import Report
from hopfdsr.scalars import I, TaylorSeries

ORDER = 6
S = hopf.twist_system()
H0 = hopf.primitive_hopf(S)
ACT = action.igl_action(H0)
X = ACT.module
TWISTS = [("abelian", s) for s in ABELIAN_SET] + [("jordanian", r) for r in JORDANIAN_SET]


@pytest.fixture
def announce(capsys):
    def _say(label, passed, note=""):
        with capsys.disabled():
            tail = f" ({note})" if note else ""
            print(f"\n[{'PASS' if passed else 'FAIL'}] {label}{tail}")
    return _say


def twist(kind, p, order=ORDER):
    return hopf.build_twist(kind, order, S, s=p if kind == "abelian" else None,
                            r=p if kind == "jordanian" else None)


def _failed(rep: Report) -> str:
    return ", ".join(c.id for c in rep.failures()[:4])


# -- 1 ------------------------------------------------------------------------------------

def test_criterion_01_cocycles(announce):
    rep, slowest = Report(), 0.0
    for kind, p in TWISTS:
        order = 6 if kind == "abelian" else 5
        t0 = time.perf_counter()
        _, r = hopf.check_cocycle(twist(kind, p, order), H0, order)
        slowest = max(slowest, time.perf_counter() - t0)
        rep.extend(r, f"{kind}({p}):")
    ok = rep.passed and slowest < 60
    announce("criterion 1: 2-cocycle and normalization, Abelian h^6 / Jordanian h^5", ok,
             f"{len(rep.checks)} checks, slowest {slowest:.2f}s")
    assert ok, _failed(rep)


# -- 2 ------------------------------------------------------------------------------------

def _closed_compare(kind, p, printed):
    HF = hopf.twist_hopf(H0, twist(kind, p), ORDER)
    return hopf.compare_hopf(HF, hopf.closed_twisted_hopf(kind, p, ORDER, S, printed=printed), ORDER)


def test_criterion_02_closed_tables(announce):
    rep = Report()
    for kind, p in TWISTS:
        rep.extend(_closed_compare(kind, p, printed=False), f"{kind}({p}):")
    announce("criterion 2: twisted coproducts and antipodes match the corrected closed tables to h^6",
             rep.passed, f"{len(rep.checks)} entries")
    assert rep.passed, _failed(rep)


@pytest.mark.xfail(strict=True, reason="printed closed tables disagree with F Delta F^-1")
def test_criterion_02_literal_tables(announce):
    rep = Report()
    for kind, p in TWISTS:
        rep.extend(_closed_compare(kind, p, printed=True), f"{kind}({p}):")
    announce("criterion 2 (literal closed tables)", rep.passed,
             f"{len(rep.failures())} mismatching entries, e.g. {_failed(rep)}")
    assert rep.passed


# -- 3 ------------------------------------------------------------------------------------

def test_criterion_03_r_matrices(announce):
    rep = Report()
    P0, D, L00 = S.gen("P0"), hopf.dilatation(S), S.gen("L00")
    unit = hopf.TensorElement.unit(S)
    target = hopf.exp_tensor(hopf.wedge(D, P0).scale(I).shift(1), ORDER)
    for kind, p in TWISTS:
        R, r1 = hopf.r_matrices(twist(kind, p))
        rep.add_residual(f"{kind}({p}):R-1-hr", (R - unit - r1.shift(1)).truncate(1))
        if kind == "abelian":
            rep.add_residual(f"abelian({p}):R=exp", (R - target).truncate(ORDER))
        else:
            jt = (hopf.wedge(D, P0) - hopf.wedge(L00, P0).scale(p)).scale(I)
            rep.add_residual(f"jordanian({p}):r", r1 - jt)
    announce("criterion 3: Abelian R = exp(i h D^P0) for every s; R = 1 + h r + O(h^2); "
             "Jordanian r = i(D^P0 - r L00^P0)", rep.passed)
    assert rep.passed, _failed(rep)


@pytest.mark.xfail(strict=True, reason="the printed r-matrix (1/r) D^P0 - L00^P0 lacks the factor i r")
def test_criterion_03_literal_jordanian_r(announce):
    rep = Report()
    P0, D, L00 = S.gen("P0"), hopf.dilatation(S), S.gen("L00")
    for r in JORDANIAN_SET:
        _, r1 = hopf.r_matrices(twist("jordanian", r, 3))
        rep.add_residual(f"r={r}", r1 - (hopf.wedge(D, P0).scale(1 / r) - hopf.wedge(L00, P0)))
    announce("criterion 3 (literal Jordanian classical r-matrix)", rep.passed, _failed(rep))
    assert rep.passed


# -- 4 ------------------------------------------------------------------------------------

def _random_poly(rng):
    data = {}
    for _ in range(rng.randint(1, 3)):
        e = tuple(rng.randint(0, 2) if m == 0 else rng.randint(0, 1) for m in range(4))
        data[e] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return action.poly_from_exponents(X, data)


def test_criterion_04_star_relations(announce):
    rep = Report()
    x = [X.gen(f"x{m}") for m in range(4)]
    for kind, p in TWISTS:
        F = twist(kind, p)
        for k in (1, 2, 3):
            c = action.star_commutator(F, ACT, x[0], x[k])
            rep.add_residual(f"{kind}({p}):[x0,x{k}]", (c - x[k].scale(I).shift(1)).truncate(ORDER))
            for j in range(1, k):
                rep.add_residual(f"{kind}({p}):[x{j},x{k}]",
                                 action.star_commutator(F, ACT, x[j], x[k]).truncate(ORDER))
    rng = random.Random(2024)
    for n in range(50):
        kind, p = TWISTS[n % len(TWISTS)]
        F = twist(kind, p)
        f, g, k = (_random_poly(rng) for _ in range(3))
        left = action.star_product(F, ACT, action.star_product(F, ACT, f, g), k)
        right = action.star_product(F, ACT, f, action.star_product(F, ACT, g, k))
        rep.add_residual(f"assoc#{n}:{kind}({p})", (left - right).truncate(ORDER))
    announce("criterion 4: kappa-Minkowski star relations to h^6 for every twist; "
             "associativity on 50 random triples", rep.passed)
    assert rep.passed, _failed(rep)


# -- 5 ------------------------------------------------------------------------------------

def test_criterion_05_hat_coordinates(announce):
    rep = Report()
    for kind, p in [("abelian", Fraction(0)), ("abelian", Fraction(1, 2)), ("jordanian", Fraction(1))]:
        hc = action.hat_coordinates(twist(kind, p), ACT)
        tag = f"{kind}({p}):"
        rep.extend(hc.roundtrip, tag)
        xh = hc.xhat
        for k in (1, 2, 3):
            rep.add_residual(f"{tag}[x0,x{k}]",
                             (xh[0] * xh[k] - xh[k] * xh[0] - xh[k].scale(I).shift(1)).truncate(ORDER))
            for j in range(1, k):
                rep.add_residual(f"{tag}[x{j},x{k}]", (xh[j] * xh[k] - xh[k] * xh[j]).truncate(ORDER))
    announce("criterion 5: hat coordinates satisfy kappa-Minkowski and round-trip exactly", rep.passed)
    assert rep.passed, _failed(rep)


# -- 6 ------------------------------------------------------------------------------------

def test_criterion_06_kappa_poincare(announce):
    t0 = time.perf_counter()
    rep = hopf.check_hopf_axioms(hopf.kappa_poincare(ORDER), ORDER)
    elapsed = time.perf_counter() - t0
    ok = rep.passed and elapsed < 300 and len(rep.checks) == 50
    announce("criterion 6: kappa-Poincare Hopf axioms on 10 generators to h^6", ok, f"{elapsed:.1f}s")
    assert ok, _failed(rep)


# -- 7 ------------------------------------------------------------------------------------

EFFECTIVE = 5


def _dsr_family():
    yield "covariant", rz.build_covariant(EFFECTIVE)
    rng = random.Random(7)
    for n in range(20):
        p = rz.random_params(rng, EFFECTIVE + 1, psi_deg=3, gamma_deg=3)
        yield f"noncovariant#{n}", rz.build_noncovariant(p)


def test_criterion_07_dsr_suite(announce):
    rep = Report()
    count = 0
    for tag, g in _dsr_family():
        assert g.order == EFFECTIVE
        rep.extend(rz.check_dsr_suite(g, covariant_form=False), tag + ":")
        count += 1
    rep.extend(rz.bicrossproduct_check(EFFECTIVE))
    announce(f"criterion 7: DSR relations for {count} realizations at h^{EFFECTIVE} with [C, X_mu] = 2i P_mu; "
             "bicrossproduct P0 and Casimir exact", rep.passed, f"{len(rep.checks)} checks")
    assert rep.passed, _failed(rep)


@pytest.mark.xfail(strict=True, reason="[C, X_mu] = 2 P_mu is off by a factor i")
def test_criterion_07_literal_casimir_relation(announce):
    rep = rz.check_dsr_suite(rz.build_covariant(EFFECTIVE), casimir_scale=2, covariant_form=False)
    bad = [c.id for c in rep.failures()]
    announce("criterion 7 (literal [C, X_mu] = 2 P_mu)", rep.passed, ", ".join(bad))
    assert rep.passed


# -- 8 ------------------------------------------------------------------------------------

def test_criterion_08_snyder(announce):
    rep = rz.snyder_map(rz.build_covariant(EFFECTIVE))
    announce("criterion 8: Snyder map relations for the covariant realization to h^5", rep.passed)
    assert rep.passed, _failed(rep)


# -- 9 ------------------------------------------------------------------------------------

def test_criterion_09_qanalog(announce):
    rep = Report()
    A = qanalog.build_presented(1)
    rep.extend(qanalog.q_confluence(A), "confluence:")
    rep.extend(qanalog.check_q_hopf(qanalog.build_presented(1, coordinates=False)), "hopf:")
    rep.extend(qanalog.check_q_smash(1), "smash:")
    rep.extend(qanalog.casimir_report(A), "casimir:")
    rep.extend(qanalog.localized_checks(1), "localized:")
    rep.extend(qanalog.rescaling_isomorphism(1, 2), "rescale:")
    announce("criterion 9: q-analog confluence, exact Hopf axioms, smash cross relations, localized "
             "Casimir/Weyl checks (corrected embedding), rescaling (1, 2) with every X scaled", rep.passed,
             f"{len(rep.checks)} checks")
    assert rep.passed, _failed(rep)


@pytest.mark.xfail(strict=True, reason="the printed Weyl embedding fails [p_0, x^i] = 0 and [x^0, x^i] = 0")
def test_criterion_09_literal_weyl_embedding(announce):
    rep = qanalog.weyl_checks(qanalog.LocalizedCalculus(1), printed=True)
    announce("criterion 9 (literal Weyl embedding)", rep.passed, _failed(rep))
    assert rep.passed


@pytest.mark.xfail(strict=True, reason="rescaling P and X^0 only is not a homomorphism for kappa1 != kappa2")
def test_criterion_09_literal_rescaling(announce):
    rep = qanalog.rescaling_isomorphism(1, 2, qanalog.rescaling_map(1, 2, literal=True))
    announce("criterion 9 (literal rescaling map)", rep.passed, _failed(rep))
    assert rep.passed


# -- 10 -----------------------------------------------------------------------------------

def test_criterion_10_phenomenology(announce):
    rep = Report()
    for r in (Fraction(-1), Fraction(1), Fraction(2), Fraction(1, 3)):
        b1, b2, cross = pheno.b_coefficients(pheno.DispersionModel.jordanian(r), source="series")
        rep.add(f"jordanian({r}):b1", b1 == -(1 + r) / 2)
        rep.add(f"jordanian({r}):b2", b2 == (1 + 3 * r + 2 * r * r) / 6)
        rep.extend(cross, f"jordanian({r}):")
    m = pheno.DispersionModel(TaylorSeries([1], 3), TaylorSeries([0], 3))
    b1, _, _ = pheno.b_coefficients(m, source="series")
    rep.add("psi=1,gamma=0:b1", b1 == Fraction(-1, 2))
    for s in ABELIAN_SET:
        d = pheno.abelian_b2_discrepancy(s)
        # the discrepancy must be detected wherever the two literal coefficients differ
        rep.add(f"abelian({s}):discrepancy reported", d["literal_mismatch"] == (s != Fraction(1, 2)),
                detail=str(d))
    rep.extend(pheno.check_mass_relation(1, 4), "mass:")
    rep.extend(pheno.check_mass_relation(Fraction(3, 2), 4), "mass:")
    announce("criterion 10: Jordanian and psi=1 b-coefficients, Abelian b2 discrepancy reported, "
             "mass relation oracle to order 4", rep.passed)
    assert rep.passed, _failed(rep)


# -- 11 -----------------------------------------------------------------------------------

def test_criterion_11_cli_end_to_end(announce, tmp_path):
    outputs, codes, times = [], [], []
    for n in range(2):
        path = tmp_path / f"all{n}.json"
        t0 = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "hopfdsr.cli", "verify", "all", "--order", "5",
                               "--out", str(path)], capture_output=True, timeout=900)
        times.append(time.perf_counter() - t0)
        codes.append(proc.returncode)
        outputs.append(path.read_bytes())
    ok = codes == [0, 0] and outputs[0] == outputs[1] and max(times) < 900
    announce("criterion 11: `verify all --order 5` exits 0 with byte-identical output", ok,
             f"exit codes {codes}, {max(times):.1f}s per run")
    assert ok
