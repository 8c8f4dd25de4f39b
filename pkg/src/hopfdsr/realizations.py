"""Heisenberg realizations of the kappa-Poincare DSR algebra inside the
undeformed Weyl algebra weyl(4): the noncovariant (psi, gamma) family, the
covariant realization, and the checks run on them.

Index conventions: ``x{mu}`` carries an upper index, ``p{mu}`` a lower one,
[p_mu, x^nu] = -i delta.  Lowering uses diag(-1, 1, 1, 1), so X_0 = -X^0.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .hopf import binomial_coeffs, element_series, invert_element, momentum_square
from .pbw import AlgebraElement, GeneratorSystem, commutator, dagger, levi_civita, weyl
from .report import Report
from .scalars import I, TaylorSeries, build_psi_gamma

SPATIAL = (1, 2, 3)


@dataclass
class RealizationParams:
    psi: TaylorSeries
    gamma: TaylorSeries
    order: int
    Psi: TaylorSeries = field(init=False)
    Gamma: TaylorSeries = field(init=False)

    def __post_init__(self):
        if self.psi[0] != 1:
            raise ValueError("psi(0) must equal 1")
        # two extra orders absorb the h^-1 and h^-2 prefactors in P_0 and C
        top = self.order + 2
        self.psi = self.psi.with_order(top)
        self.gamma = self.gamma.with_order(top)
        self.Psi, self.Gamma = build_psi_gamma(self.psi, self.gamma, top)

    @classmethod
    def parse(cls, psi: str, gamma: str, order: int) -> "RealizationParams":
        return cls(TaylorSeries.parse(psi, order + 2), TaylorSeries.parse(gamma, order + 2), order)


@dataclass
class DsrGenerators:
    """Upper-index X, lower-index P, rotations M_i, boosts Nb_i and Casimir C."""

    sys: GeneratorSystem
    X: list
    P: list
    M: dict
    Nb: dict
    C: AlgebraElement
    order: int
    label: str = ""
    extra: dict = field(default_factory=dict)

    def X_lower(self, mu: int) -> AlgebraElement:
        return self.X[mu].scale(self.sys.metric[mu][mu])

    def lorentz(self, mu: int, nu: int) -> AlgebraElement:
        """M_{mu nu} with M_{0i} = N_i and M_{ij} = eps_ijk M_k."""
        if mu == nu:
            return self.sys.zero()
        if mu == 0:
            return self.Nb[nu]
        if nu == 0:
            return -self.Nb[mu]
        out = self.sys.zero()
        for k in SPATIAL:
            e = levi_civita(mu, nu, k)
            if e:
                out = out + self.M[k].scale(e)
        return out

    def members(self):
        yield from ((f"X{m}", x) for m, x in enumerate(self.X))
        yield from ((f"P{m}", p) for m, p in enumerate(self.P))
        yield from ((f"M{i}", self.M[i]) for i in SPATIAL)
        yield from ((f"N{i}", self.Nb[i]) for i in SPATIAL)
        yield ("C", self.C)

    def truncate(self, order: int) -> "DsrGenerators":
        t = lambda a: a.truncate(order)
        return DsrGenerators(self.sys, [t(a) for a in self.X], [t(a) for a in self.P],
                             {i: t(a) for i, a in self.M.items()}, {i: t(a) for i, a in self.Nb.items()},
                             t(self.C), min(order, self.order), self.label,
                             {k: (t(v) if isinstance(v, AlgebraElement) else v) for k, v in self.extra.items()})


def tilde(sys: GeneratorSystem, f: TaylorSeries, order: int) -> AlgebraElement:
    """f(-h p_0) as an element of the Weyl algebra."""
    y = sys.gen("p0").shift(1).scale(-1)
    return element_series(y, f.coeffs[: order + 1], order)


def rotations(sys: GeneratorSystem) -> dict:
    """M_i = eps_ijk x_j p_k (spatial indices are not affected by lowering)."""
    out = {}
    for i in SPATIAL:
        acc = sys.zero()
        for j in SPATIAL:
            for k in SPATIAL:
                e = levi_civita(i, j, k)
                if e:
                    acc = acc + (sys.gen(f"x{j}") * sys.gen(f"p{k}")).scale(e)
        out[i] = acc
    return out


def _spatial_psq(sys):
    return momentum_square(sys, spatial_only=True, prefix="p")


def _euler(sys):
    acc = sys.zero()
    for k in SPATIAL:
        acc = acc + sys.gen(f"x{k}") * sys.gen(f"p{k}")
    return acc


def boost_from_identity(X: list, P: list, Psi_t: AlgebraElement, sign: int = -1) -> dict:
    """sign * (X_i P_0 - X_0 P_i) Psi~ ; sign=-1 gives the classical limit x_0 p_i - x_i p_0."""
    out = {}
    X0_low = -X[0]
    for i in SPATIAL:
        out[i] = ((X[i] * P[0] - X0_low * P[i]) * Psi_t).scale(sign)
    return out


def printed_boost(sys, t: dict, i: int, amended: bool = True, gamma_power: int = 1) -> AlgebraElement:
    """The closed four-term boost.

    The literal form has classical limit x_i p_0 - x_0 p_i and an imaginary
    (i/2) h x_i p^2 term.  ``amended`` flips the overall sign and makes that
    coefficient real, which is what the identity form and the relation suite
    require.  ``gamma_power`` is the power of Gamma~^{-1} in the last two terms.
    """
    xi = sys.gen(f"x{i}")
    x0_low = -sys.gen("x0")
    pi = sys.gen(f"p{i}")
    ginv = t["Gamma_inv"] if gamma_power == 1 else t["Gamma_inv2"]
    third = Fraction(1, 2) if amended else I * Fraction(1, 2)
    term1 = (xi * t["Gamma"] * (t["Psi_inv"] - t["Psi"])).shift(-1).scale(Fraction(1, 2))
    term2 = x0_low * pi * t["psi"] * t["Psi"] * t["Gamma_inv"]
    term3 = (xi * _spatial_psq(sys) * t["Psi"] * ginv).shift(1).scale(third)
    term4 = (_euler(sys) * pi * t["gamma"] * t["Psi"] * ginv).shift(1)
    out = term1 - term2 + term3 - term4
    return -out if amended else out


def build_noncovariant(params: RealizationParams, sys: GeneratorSystem | None = None,
                       drop_x0_correction: bool = False) -> DsrGenerators:
    """The (psi, gamma) family; every member is trusted to h^(order - 1)."""
    sys = sys or weyl(4)
    top = params.order + 1
    Psi = tilde(sys, params.Psi, top)
    Gam = tilde(sys, params.Gamma, top)
    t = {
        "psi": tilde(sys, params.psi, top),
        "gamma": tilde(sys, params.gamma, top),
        "Psi": Psi,
        "Gamma": Gam,
        "Psi_inv": invert_element(Psi, top),
        "Gamma_inv": invert_element(Gam, top),
    }
    t["Gamma_inv2"] = (t["Gamma_inv"] * t["Gamma_inv"]).truncate(top)
    x = [sys.gen(f"x{m}") for m in range(4)]
    p = [sys.gen(f"p{m}") for m in range(4)]
    psq = _spatial_psq(sys)

    X = [None] * 4
    X[0] = x[0] * t["psi"]
    if not drop_x0_correction:
        X[0] = X[0] - (_euler(sys) * t["gamma"]).shift(1)
    for i in SPATIAL:
        X[i] = x[i] * Gam * t["Psi_inv"]
    P = [None] * 4
    for i in SPATIAL:
        P[i] = p[i] * t["Gamma_inv"]
    P[0] = ((t["Psi_inv"] - Psi).shift(-1).scale(Fraction(1, 2))
            + (psq * Psi * t["Gamma_inv2"]).shift(1).scale(Fraction(1, 2)))
    if not P[0].is_regular():
        raise ValueError("P_0 kept an h^-1 principal part")
    C = (t["Psi_inv"] + Psi - 2).shift(-2) - psq * Psi * t["Gamma_inv2"]
    if not C.is_regular():
        raise ValueError("Casimir kept a principal part")
    M = rotations(sys)
    Nb = boost_from_identity(X, P, Psi)
    g = DsrGenerators(sys, X, P, M, Nb, C, params.order - 1, "noncovariant",
                      {"Psi~": Psi, "Gamma~": Gam})
    g = g.truncate(params.order - 1)
    g.extra["_tilde"] = t
    for name, a in g.members():
        if not a.is_regular():
            raise ValueError(f"{name} is not regular")
    return g


def kappa_factor(sys: GeneratorSystem, order: int, prefix: str = "p"):
    """(h p_0 + sqrt(1 - h^2 p^2), sqrt(1 - h^2 p^2)) in a commutative momentum sector."""
    psq = momentum_square(sys, prefix=prefix)
    root = element_series(-psq.shift(2), binomial_coeffs(Fraction(1, 2), order), order)
    return (sys.gen(f"{prefix}0").shift(1) + root).truncate(order), root


def kappa_casimir(sys: GeneratorSystem, P: list, order: int, printed: bool = False) -> AlgebraElement:
    """2 h^-2 (sqrt(1 - h^2 P^2) - 1) with P^2 = P_vec^2 - P_0^2, trusted to h^order.

    ``printed=True`` uses sqrt(1 + h^2 P^2) instead; that element commutes with
    X_mu to -2i P_mu and does not agree with the (psi, gamma) Casimir.
    """
    psq = sum((P[k] * P[k] for k in SPATIAL), sys.zero()) - P[0] * P[0]
    top = order + 2
    y = psq.shift(2) if printed else -psq.shift(2)
    root = element_series(y, binomial_coeffs(Fraction(1, 2), top), top)
    return (root - 1).shift(-2).scale(2)


def build_covariant(order: int, sys: GeneratorSystem | None = None) -> DsrGenerators:
    sys = sys or weyl(4)
    x = [sys.gen(f"x{m}") for m in range(4)]
    p = [sys.gen(f"p{m}") for m in range(4)]
    pi, _ = kappa_factor(sys, order)
    x0_low = -x[0]
    X = []
    for mu in range(4):
        p_up = p[mu].scale(sys.metric[mu][mu])
        X.append((x[mu] * pi - (x0_low * p_up).shift(1)).truncate(order))
    M = rotations(sys)
    # classical boosts M_{0i} = x_0 p_i - x_i p_0
    Nb = {i: (-x[0]) * p[i] - x[i] * p[0] for i in SPATIAL}
    C = kappa_casimir(sys, p, order)
    return DsrGenerators(sys, X, list(p), M, Nb, C, order, "covariant")


# ---------------------------------------------------------------------------
# relation suite
# ---------------------------------------------------------------------------

def _comm(g, a, b):
    return commutator(g.sys, a, b).truncate(g.order)


def dsr_relations(g: DsrGenerators, casimir_scale=2 * I) -> list:
    """(id, lhs, rhs) triples; ``casimir_scale`` multiplies P_mu in [C, X_mu]."""
    sys = g.sys
    M, N, P = g.M, g.Nb, g.P
    Xl = [g.X_lower(m) for m in range(4)]
    h = lambda a: a.shift(1)
    zero = sys.zero()
    psq = sum((P[k] * P[k] for k in SPATIAL), zero) - P[0] * P[0]
    root = element_series(-psq.shift(2), binomial_coeffs(Fraction(1, 2), g.order), g.order)
    rels = []

    def eps_sum(i, j, vec):
        out = zero
        for k in SPATIAL:
            e = levi_civita(i, j, k)
            if e:
                out = out + vec[k].scale(e)
        return out

    for i in SPATIAL:
        for j in SPATIAL:
            rels.append((f"L1:[M{i},M{j}]", _comm(g, M[i], M[j]), eps_sum(i, j, M).scale(I)))
            rels.append((f"L1:[M{i},N{j}]", _comm(g, M[i], N[j]), eps_sum(i, j, N).scale(I)))
            rels.append((f"L1:[N{i},N{j}]", _comm(g, N[i], N[j]), eps_sum(i, j, M).scale(-I)))
    for mu in range(4):
        for nu in range(mu + 1, 4):
            rels.append((f"L2:[P{mu},P{nu}]", _comm(g, P[mu], P[nu]), zero))
    for j in SPATIAL:
        rels.append((f"L2:[M{j},P0]", _comm(g, M[j], P[0]), zero))
        rels.append((f"L2:[N{j},P0]", _comm(g, N[j], P[0]), P[j].scale(-I)))
        for k in SPATIAL:
            rels.append((f"L2:[M{j},P{k}]", _comm(g, M[j], P[k]), eps_sum(j, k, P).scale(I)))
            rels.append((f"L2:[N{j},P{k}]", _comm(g, N[j], P[k]), P[0].scale(-I) if j == k else zero))
    for i in SPATIAL:
        rels.append((f"L3:[M{i},X_0]", _comm(g, M[i], Xl[0]), zero))
        rels.append((f"L3:[N{i},X_0]", _comm(g, N[i], Xl[0]), Xl[i].scale(-I) - h(N[i]).scale(I)))
        for j in SPATIAL:
            rels.append((f"L4:[M{i},X_{j}]", _comm(g, M[i], Xl[j]), eps_sum(i, j, Xl).scale(I)))
            rhs = h(eps_sum(i, j, M)).scale(I)
            if i == j:
                rhs = rhs - Xl[0].scale(I)
            rels.append((f"L4:[N{i},X_{j}]", _comm(g, N[i], Xl[j]), rhs))
    pi = h(P[0]) + root
    for k in SPATIAL:
        rels.append((f"L7:[P{k},X_0]", _comm(g, P[k], Xl[0]), zero))
        for j in SPATIAL:
            rels.append((f"L7:[P{k},X_{j}]", _comm(g, P[k], Xl[j]), pi.scale(-I) if j == k else zero))
        rels.append((f"L8:[P0,X_{k}]", _comm(g, P[0], Xl[k]), h(P[k]).scale(-I)))
    rels.append(("L8:[P0,X_0]", _comm(g, P[0], Xl[0]), root.scale(I)))
    for i in SPATIAL:
        rels.append((f"kM:[X_0,X_{i}]", _comm(g, Xl[0], Xl[i]), h(Xl[i]).scale(-I)))
        for j in SPATIAL:
            if j > i:
                rels.append((f"kM:[X_{i},X_{j}]", _comm(g, Xl[i], Xl[j]), zero))
    for mu in range(4):
        rels.append((f"C:[C,X_{mu}]", _comm(g, g.C, Xl[mu]), P[mu].scale(casimir_scale)))
        rels.append((f"C:[C,P{mu}]", _comm(g, g.C, P[mu]), zero))
    for i in SPATIAL:
        rels.append((f"C:[C,M{i}]", _comm(g, g.C, M[i]), zero))
        rels.append((f"C:[C,N{i}]", _comm(g, g.C, N[i]), zero))
    return rels


def covariant_form_relations(g: DsrGenerators) -> list:
    """[M_{mu nu}, X_lam] = i eta_{mu lam} X_nu - i eta_{nu lam} X_mu - i h a_mu M_{nu lam} + i h a_nu M_{mu lam}."""
    eta = g.sys.metric
    a_low = [eta[0][0], 0, 0, 0]
    Xl = [g.X_lower(m) for m in range(4)]
    rels = []
    for mu in range(4):
        for nu in range(4):
            if mu == nu:
                continue
            Mmn = g.lorentz(mu, nu)
            for lam in range(4):
                rhs = (Xl[nu].scale(I * eta[mu][lam]) - Xl[mu].scale(I * eta[nu][lam])
                       - g.lorentz(nu, lam).shift(1).scale(I * a_low[mu])
                       + g.lorentz(mu, lam).shift(1).scale(I * a_low[nu]))
                rels.append((f"cov:[M{mu}{nu},X_{lam}]", _comm(g, Mmn, Xl[lam]), rhs))
    return rels


def _report(rels, order) -> Report:
    rep = Report()
    for rid, lhs, rhs in rels:
        rep.add_residual(rid, (lhs - rhs).truncate(order))
    return rep


def check_dsr_suite(g: DsrGenerators, order: int | None = None, casimir_scale=2 * I,
                    covariant_form: bool = True) -> Report:
    order = g.order if order is None else min(order, g.order)
    g = g.truncate(order)
    rels = dsr_relations(g, casimir_scale)
    if covariant_form:
        rels += covariant_form_relations(g)
    return _report(rels, order)


# ---------------------------------------------------------------------------
# hermiticity, Snyder map, classical limit, commuting coordinates
# ---------------------------------------------------------------------------

def check_hermiticity(g: DsrGenerators) -> Report:
    """dagger(X^mu) - X^mu for each mu; the defect is kept in ``detail``."""
    rep = Report()
    for mu, x in enumerate(g.X):
        rep.add_residual(f"hermitian:X{mu}", dagger(g.sys, x) - x)
    return rep


def hermiticity_defect(g: DsrGenerators) -> AlgebraElement:
    return dagger(g.sys, g.X[0]) - g.X[0]


def hermitian_gamma(psi: TaylorSeries) -> TaylorSeries:
    """The gamma making X^0 self-adjoint for the given psi: gamma = -psi'/3."""
    return psi.derivative() * Fraction(-1, 3)


def snyder_map(g: DsrGenerators, order: int | None = None) -> Report:
    order = g.order if order is None else min(order, g.order)
    g = g.truncate(order)
    sys = g.sys
    eta = sys.metric
    Xl = [g.X_lower(m) for m in range(4)]
    Xt = [Xl[0]] + [Xl[j] + g.Nb[j].shift(1) for j in SPATIAL]
    P = g.P
    psq = sum((P[k] * P[k] for k in SPATIAL), sys.zero()) - P[0] * P[0]
    Mc = element_series(-psq.shift(2), binomial_coeffs(Fraction(1, 2), order), order)
    rels = []
    for mu in range(4):
        for nu in range(4):
            rels.append((f"snyder:[P{mu},Xt_{nu}]", _comm(g, P[mu], Xt[nu]), Mc.scale(-I * eta[mu][nu])))
            if nu > mu:
                rels.append((f"snyder:[Xt_{mu},Xt_{nu}]", _comm(g, Xt[mu], Xt[nu]),
                             g.lorentz(mu, nu).shift(2).scale(I)))
        rels.append((f"snyder:[P{mu},M]", _comm(g, P[mu], Mc), sys.zero()))
        rels.append((f"snyder:[Xt_{mu},M]", _comm(g, Xt[mu], Mc), P[mu].shift(2).scale(-I)))
    return _report(rels, order)


def classical_limit_check(g: DsrGenerators) -> Report:
    sys = g.sys
    x = [sys.gen(f"x{m}") for m in range(4)]
    p = [sys.gen(f"p{m}") for m in range(4)]
    rep = Report()
    for mu in range(4):
        rep.add_residual(f"limit:X{mu}", g.X[mu].classical_limit() - x[mu])
        rep.add_residual(f"limit:P{mu}", g.P[mu].classical_limit() - p[mu])
    rot = rotations(sys)
    for i in SPATIAL:
        rep.add_residual(f"limit:M{i}", g.M[i].classical_limit() - rot[i])
        rep.add_residual(f"limit:N{i}", g.Nb[i].classical_limit() - ((-x[0]) * p[i] - x[i] * p[0]))
    return rep


def commuting_coordinates(g: DsrGenerators) -> Report:
    """x~^mu = X^mu Psi~ commute, and rebuild M_i and N_i in classical form."""
    sys = g.sys
    Psi = g.extra["Psi~"]
    xt = [(a * Psi).truncate(g.order) for a in g.X]
    xt_low = [xt[m].scale(sys.metric[m][m]) for m in range(4)]
    rep = Report()
    for mu in range(4):
        for nu in range(mu + 1, 4):
            rep.add_residual(f"xtilde:[{mu},{nu}]", _comm(g, xt[mu], xt[nu]))
    for i in SPATIAL:
        acc = sys.zero()
        for j in SPATIAL:
            for k in SPATIAL:
                e = levi_civita(i, j, k)
                if e:
                    acc = acc + (xt_low[j] * g.P[k]).scale(e)
        rep.add_residual(f"xtilde:M{i}", (acc - g.M[i]).truncate(g.order))
        boost = xt_low[0] * g.P[i] - xt_low[i] * g.P[0]
        rep.add_residual(f"xtilde:N{i}", (boost - g.Nb[i]).truncate(g.order))
    return rep


def boost_variants(g: DsrGenerators) -> Report:
    """Closed four-term boost (literal and amended, Gamma~^-1 or ^-2) against the identity form."""
    t = g.extra["_tilde"]
    rep = Report()
    for amended in (False, True):
        for gp in (1, 2):
            tag = "amended" if amended else "literal"
            for i in SPATIAL:
                b = printed_boost(g.sys, t, i, amended, gp)
                rep.add_residual(f"boost[{tag},Gamma^-{gp}]:N{i}", (b - g.Nb[i]).truncate(g.order))
    return rep


def twist_special_cases(order: int) -> Report:
    """Abelian (psi=1, gamma=s) and Jordanian (psi=1+rt, gamma=0) coordinates."""
    rep = Report()
    top = order + 2
    for s in (Fraction(0), Fraction(1, 2), Fraction(1)):
        g = build_noncovariant(RealizationParams(TaylorSeries([1], top), TaylorSeries([s], top), order))
        sys = g.sys
        e = element_series(sys.gen("p0").shift(1), [Fraction(1 - s) ** m / _fact(m) for m in range(order + 1)], order)
        for i in SPATIAL:
            rep.add_residual(f"abelian(s={s}):X{i}", (g.X[i] - sys.gen(f"x{i}") * e).truncate(g.order))
        rep.add_residual(f"abelian(s={s}):X0", (g.X[0] - sys.gen("x0") + (_euler(sys) * sys.scalar(s)).shift(1)).truncate(g.order))
    for r in (Fraction(-1), Fraction(1), Fraction(2)):
        g = build_noncovariant(RealizationParams(TaylorSeries([1, r], top), TaylorSeries([0], top), order))
        sys = g.sys
        y = sys.gen("p0").shift(1).scale(-r)
        pw = element_series(y, binomial_coeffs(-1 / r, order), order)
        for i in SPATIAL:
            rep.add_residual(f"jordanian(r={r}):X{i}", (g.X[i] - sys.gen(f"x{i}") * pw).truncate(g.order))
        rep.add_residual(f"jordanian(r={r}):X0", (g.X[0] - sys.gen("x0") * (1 + y)).truncate(g.order))
    return rep


def _fact(m):
    out = 1
    for k in range(2, m + 1):
        out *= k
    return out


def random_params(rng: random.Random, order: int, psi_deg: int = 3, gamma_deg: int = 2,
                  span: int = 3) -> RealizationParams:
    top = order + 2
    val = lambda: Fraction(rng.randint(-span, span), rng.randint(1, span))
    psi = [1] + [val() for _ in range(psi_deg)]
    gamma = [val() for _ in range(gamma_deg + 1)]
    return RealizationParams(TaylorSeries(psi, top), TaylorSeries(gamma, top), order)


def hermiticity_sweep(pairs, order: int = 4) -> list:
    """For each (psi, gamma) report whether X^0 is self-adjoint and whether gamma = -psi'/3."""
    out = []
    for psi, gamma in pairs:
        g = build_noncovariant(RealizationParams(psi, gamma, order))
        selfadj = hermiticity_defect(g).is_zero()
        predicted = all(gamma[k] == hermitian_gamma(psi)[k] for k in range(order))
        out.append((psi, gamma, selfadj, predicted))
    return out


# ---------------------------------------------------------------------------
# independent oracle: the smash product of kappa-Poincare with kappa-Minkowski
# ---------------------------------------------------------------------------

def smash_dsr_system(order: int):
    """Cross relations [L, X^mu] generated by the classical action (a = -1)."""
    from .action import kappa_covariance_setup, smash_system
    A = kappa_covariance_setup(order)
    return smash_system(A)


def evaluate(a: AlgebraElement, images: dict, target: GeneratorSystem, order: int) -> AlgebraElement:
    """Substitute generator images (by name) into a normal-ordered element."""
    out = target.zero().truncate(order)
    cache = {(): target.one()}
    for w, s in a.terms.items():
        if w not in cache:
            acc = target.one()
            for gi in w:
                acc = (acc * images[a.sys.generators[gi].name]).truncate(order)
            cache[w] = acc
        for k, c in s.items():
            out = out + cache[w].shift(k).scale(c)
    return out.truncate(order)


def realization_images(g: DsrGenerators) -> dict:
    img = {f"X{m}": g.X[m] for m in range(4)}
    img.update({f"P{m}": g.P[m] for m in range(4)})
    img.update({f"M{i}": g.M[i] for i in SPATIAL})
    img.update({f"N{i}": g.Nb[i] for i in SPATIAL})
    return img


def check_against_smash(g: DsrGenerators, order: int | None = None) -> Report:
    """Every smash cross relation [L, X^mu] must hold for the realized generators."""
    order = g.order if order is None else min(order, g.order)
    g = g.truncate(order)
    S, cross = smash_dsr_system(order)
    images = realization_images(g)
    rep = Report()
    for (L, x), rhs in sorted(cross.items()):
        lhs = commutator(g.sys, images[L], images[x]).truncate(order)
        rep.add_residual(f"smash:[{L},{x}]", lhs - evaluate(rhs, images, g.sys, order))
    for j in range(len(S.generators)):
        for i in range(j):
            a, b = S.generators[j].name, S.generators[i].name
            if a in images and b in images and not (a[0] in "PMN" and b[0] == "X"):
                lhs = commutator(g.sys, images[a], images[b]).truncate(order)
                br = AlgebraElement(S, S.brackets.get((j, i), {}))
                rep.add_residual(f"smash:[{a},{b}]", lhs - evaluate(br, images, g.sys, order))
    return rep


# ---------------------------------------------------------------------------
# Poisson (dequantized) checks
# ---------------------------------------------------------------------------

def phase_space(n: int = 4) -> GeneratorSystem:
    """Commutative polynomial ring in x^mu, p_mu (h enters only through coefficients)."""
    from .pbw import Generator
    gens = [Generator(f"x{m}", "x", (m,)) for m in range(n)] + [Generator(f"p{m}", "p", (m,)) for m in range(n)]
    return GeneratorSystem(f"phase({n})", gens)


def partial(a: AlgebraElement, name: str) -> AlgebraElement:
    """Derivative of a commutative polynomial in the named generator."""
    g = a.sys.index[name]
    terms: dict = {}
    for w, s in a.terms.items():
        n = w.count(g)
        if not n:
            continue
        lst = list(w)
        lst.remove(g)
        terms[tuple(lst)] = {k: c * n for k, c in s.items()}
    return AlgebraElement(a.sys, terms, a.order)


def poisson_bracket(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Canonical bracket {a, b} = sum_mu d_x a d_p b - d_p a d_x b."""
    n = sum(1 for g in a.sys.generators if g.block == "x")
    out = a.sys.zero()
    for mu in range(n):
        xm, pm = f"x{mu}", f"p{mu}"
        out = out + partial(a, xm) * partial(b, pm) - partial(a, pm) * partial(b, xm)
    return out


def poisson_check(substitution: dict, targets) -> Report:
    """``targets`` holds (name_a, name_b, expected) with names keys of ``substitution``."""
    rep = Report()
    for a, b, expected in targets:
        rep.add_residual("{%s,%s}" % (a, b), poisson_bracket(substitution[a], substitution[b]) - expected)
    return rep


def canonical_substitution(S: GeneratorSystem | None = None):
    S = S or phase_space()
    sub = {f"x{m}": S.gen(f"x{m}") for m in range(4)}
    sub.update({f"p{m}": S.gen(f"p{m}") for m in range(4)})
    targets = []
    for mu in range(4):
        for nu in range(4):
            targets.append((f"x{mu}", f"p{nu}", S.scalar(1 if mu == nu else 0)))
            if nu > mu:
                targets.append((f"x{mu}", f"x{nu}", S.zero()))
                targets.append((f"p{mu}", f"p{nu}", S.zero()))
    return sub, targets


def magueijo_smolin(a=(1, 0, 0, 0), literal: bool = True, S: GeneratorSystem | None = None):
    """X^mu = x^mu - h a^mu x^nu p_nu, P = p, with 1/kappa written as h.

    ``literal`` uses {X^mu, P_nu} = delta + h a^mu P_nu as the target; the
    bracket this substitution actually produces has -h a^mu P_nu.
    """
    S = S or phase_space()
    dil = sum((S.gen(f"x{m}") * S.gen(f"p{m}") for m in range(4)), S.zero())
    sub = {}
    for mu in range(4):
        sub[f"X{mu}"] = S.gen(f"x{mu}") - dil.shift(1).scale(a[mu])
        sub[f"P{mu}"] = S.gen(f"p{mu}")
    sign = 1 if literal else -1
    targets = []
    for mu in range(4):
        for nu in range(4):
            exp = S.scalar(1 if mu == nu else 0) + sub[f"P{nu}"].shift(1).scale(sign * a[mu])
            targets.append((f"X{mu}", f"P{nu}", exp))
            if nu > mu:
                xx = (sub[f"X{nu}"].scale(a[mu]) - sub[f"X{mu}"].scale(a[nu])).shift(1)
                targets.append((f"X{mu}", f"X{nu}", xx))
                targets.append((f"P{mu}", f"P{nu}", S.zero()))
    return sub, targets


def kappa_minkowski_bracket(f: AlgebraElement, g: AlgebraElement, a=(1, 0, 0, 0)) -> AlgebraElement:
    """Linear bracket theta^{mu nu} d_mu f d_nu g with theta^{mu nu} = a^mu x^nu - a^nu x^mu."""
    S = f.sys
    n = len(a)
    out = S.zero()
    for mu in range(n):
        for nu in range(n):
            th = S.gen(f"x{nu}").scale(a[mu]) - S.gen(f"x{mu}").scale(a[nu])
            if th.is_zero():
                continue
            out = out + th * partial(f, f"x{mu}") * partial(g, f"x{nu}")
    return out


# ---------------------------------------------------------------------------
# bicrossproduct example (psi = gamma = 1)
# ---------------------------------------------------------------------------

def bicrossproduct_check(order: int) -> Report:
    """psi = gamma = 1 against P0 = h^-1 sinh(h p0) + (h/2) p^2 e^{h p0}
    and C = [2 h^-1 sinh(h p0 / 2)]^2 - p^2 e^{h p0}, both summed independently."""
    top = order + 2
    g = build_noncovariant(RealizationParams(TaylorSeries([1], top), TaylorSeries([1], top), order + 1))
    sys = g.sys
    n = top + 2
    y = sys.gen("p0").shift(1)
    sinh = [Fraction(0) if m % 2 == 0 else Fraction(1, _fact(m)) for m in range(n + 1)]
    half_sinh = [c * Fraction(1, 2) ** m for m, c in enumerate(sinh)]
    exp = [Fraction(1, _fact(m)) for m in range(n + 1)]
    psq = _spatial_psq(sys)
    e = element_series(y, exp, n)
    p0 = element_series(y, sinh, n).shift(-1) + (psq * e).shift(1).scale(Fraction(1, 2))
    s2 = element_series(y, half_sinh, n).shift(-1).scale(2)
    cas = s2 * s2 - psq * e
    rep = Report()
    rep.add_residual("bicrossproduct:P0", (g.P[0] - p0).truncate(g.order))
    rep.add_residual("bicrossproduct:C", (g.C - cas).truncate(g.order))
    for i in SPATIAL:
        rep.add_residual(f"bicrossproduct:P{i}", (g.P[i] - sys.gen(f"p{i}") * e).truncate(g.order))
    return rep
