"""The fixed-kappa (q-analog) canonical DSR algebra.

Here kappa is a number.  The deformed energy is hidden in a pair of mutually
inverse group-like generators ``Pi`` and ``Pii`` (for Pi^{-1}); everything is
a finitely presented algebra over the Gaussian rationals, so all checks are
exact with no truncation.

Formulas that need inverses of non-unit elements (the Lorentz realization,
the Weyl embedding) live in a small localized calculus: X-monomials on the
left, rational functions of the commuting (P_1, P_2, P_3, Pi) on the right.
"""
from __future__ import annotations

from fractions import Fraction

from .action import HopfAction, check_covariance, smash_system
from .hopf import HopfStructure, TensorElement, check_hopf_axioms, coproduct_apply
from .pbw import (AlgebraElement, Generator, GeneratorSystem, _acc_series, _Builder, _clean,
                  an, check_confluence, commutator, levi_civita)
from .report import Report
from .scalars import ONE, ZERO, I, as_gaussian

SPATIAL = (1, 2, 3)


# ---------------------------------------------------------------------------
# presented algebra
# ---------------------------------------------------------------------------

class PresentedAlgebra(GeneratorSystem):
    """Generator system with extra unit relations a b = b a = 1 for adjacent pairs."""

    def __init__(self, name, generators, brackets=None, inverse_pairs=(), kappa=None):
        super().__init__(name, generators, brackets)
        self.inverse_pairs = []
        for a, b in inverse_pairs:
            ia, ib = self.index[a], self.index[b]
            if ib != ia + 1:
                raise ValueError("inverse pairs must be adjacent in the generator order")
            self.inverse_pairs.append((ia, ib))
        self.kappa = kappa
        self._red_cache: dict = {}

    def _reduce(self, w: tuple) -> tuple:
        for a, b in self.inverse_pairs:
            na, nb = w.count(a), w.count(b)
            if na and nb:
                m = min(na, nb)
                lst = list(w)
                for _ in range(m):
                    lst.remove(a)
                    lst.remove(b)
                w = tuple(lst)
        return w

    def _mul_gen(self, w: tuple, g: int) -> dict:
        key = (w, g)
        hit = self._red_cache.get(key)
        if hit is not None:
            return hit
        raw = GeneratorSystem._mul_gen(self, w, g)
        res: dict = {}
        for w2, s in raw.items():
            _acc_series(res, self._reduce(w2), s)
        res = _clean(res)
        self._red_cache[key] = res
        return res

    def clear_caches(self):
        super().clear_caches()
        self._red_cache.clear()


def _hopf_gens():
    return ([Generator("Pi", "Pi"), Generator("Pii", "Pi")]
            + [Generator(f"P{m}", "P", (m,)) for m in SPATIAL]
            + [Generator(f"M{m}", "M", (m,)) for m in SPATIAL]
            + [Generator(f"N{m}", "N", (m,)) for m in SPATIAL])


def _install_hopf_rules(b: _Builder, kappa: Fraction, np_sign: int = 1):
    k = as_gaussian(kappa)
    kinv = k.inverse()
    for i in SPATIAL:
        for j in SPATIAL:
            mm, mn, nn = [], [], []
            for l in SPATIAL:
                e = levi_civita(i, j, l)
                if e:
                    mm.append((I * e, (f"M{l}",)))
                    mn.append((I * e, (f"N{l}",)))
                    nn.append((-I * e, (f"M{l}",)))
            if i < j:
                b.set(f"M{i}", f"M{j}", mm)
                b.set(f"N{i}", f"N{j}", nn)
            b.set(f"M{i}", f"N{j}", mn)
            b.set(f"M{i}", f"P{j}", [(I * levi_civita(i, j, l), (f"P{l}",)) for l in SPATIAL if levi_civita(i, j, l)])
            if i == j:
                # [N_i, P_i] = -(i/2)(kappa (Pi - Pi^-1) + kappa^-1 P^2 Pi^-1)
                c = -I * Fraction(1, 2) * np_sign
                combo = [(c * k, ("Pi",)), (-c * k, ("Pii",))]
                combo += [(c * kinv, (f"P{m}", f"P{m}", "Pii")) for m in SPATIAL]
                b.set(f"N{i}", f"P{j}", combo)
            else:
                b.set(f"N{i}", f"P{j}", [])
        b.set(f"N{i}", "Pi", [(-I * kinv, (f"P{i}",))])
        # [N_i, Pi^-1] = (i/kappa) P_i Pi^-2
        b.set(f"N{i}", "Pii", [(I * kinv, (f"P{i}", "Pii", "Pii"))])


def _install_coordinate_rules(b: _Builder, kappa: Fraction):
    kinv = as_gaussian(kappa).inverse()
    for i in SPATIAL:
        b.set("X0", f"X{i}", [(I * kinv, (f"X{i}",))])
    # [Pi^{+-1}, X^0] = -+ (i/kappa) Pi^{+-1}
    b.set("Pi", "X0", [(-I * kinv, ("Pi",))])
    b.set("Pii", "X0", [(I * kinv, ("Pii",))])
    for k in SPATIAL:
        for j in SPATIAL:
            b.set(f"P{k}", f"X{j}", [(-I, ("Pi",))] if j == k else [])
            b.set(f"M{k}", f"X{j}", [(I * levi_civita(k, j, l), (f"X{l}",)) for l in SPATIAL if levi_civita(k, j, l)])
            combo = [(I * kinv * levi_civita(k, j, l), (f"M{l}",)) for l in SPATIAL if levi_civita(k, j, l)]
            if j == k:
                combo.append((I, ("X0",)))
            # [N_k, X^j] = i delta X^0 + (i/kappa) eps_kjl M_l
            b.set(f"N{k}", f"X{j}", combo)
        # [N_k, X^0] = i X^k + (i/kappa) N_k
        b.set(f"N{k}", "X0", [(I, (f"X{k}",)), (I * kinv, (f"N{k}",))])


def build_presented(kappa=1, coordinates: bool = True, np_sign: int = 1) -> PresentedAlgebra:
    """Canonical DSR algebra (or only its Hopf part) at a fixed nonzero kappa.

    Order: X^0..X^3 < Pi < Pi^-1 < P_i < M_i < N_i.  ``np_sign=-1`` corrupts
    the sign of [N_i, P_i] (used to exercise the overlap checker).
    """
    kappa = Fraction(kappa)
    if kappa == 0:
        raise ValueError("kappa must be nonzero")
    gens = ([Generator(f"X{m}", "X", (m,)) for m in range(4)] if coordinates else []) + _hopf_gens()
    b = _Builder(gens)
    _install_hopf_rules(b, kappa, np_sign)
    if coordinates:
        _install_coordinate_rules(b, kappa)
    tag = "dsr" if coordinates else "hopf"
    return PresentedAlgebra(f"q-{tag}(kappa={kappa})", gens, b.table, [("Pi", "Pii")], kappa)


def normal_form(A: PresentedAlgebra, word) -> AlgebraElement:
    """Normal form of a word given as generator names (or a space separated string)."""
    if isinstance(word, str):
        word = word.split()
    return A.word(word)


def q_confluence(A: PresentedAlgebra) -> Report:
    return check_confluence(A)


# ---------------------------------------------------------------------------
# Hopf structure
# ---------------------------------------------------------------------------

def q_hopf(A: PresentedAlgebra) -> HopfStructure:
    """Coproducts, antipodes and counits of U_kappa(io(1,3)) on the Hopf generators of A."""
    T = TensorElement.of
    kinv = as_gaussian(A.kappa).inverse()
    one = A.one()
    Pi, Pii = A.gen("Pi"), A.gen("Pii")
    cop = {"Pi": T(Pi, Pi), "Pii": T(Pii, Pii)}
    ant = {"Pi": Pii, "Pii": Pi}
    for i in SPATIAL:
        Pk, Mi, Ni = A.gen(f"P{i}"), A.gen(f"M{i}"), A.gen(f"N{i}")
        cop[f"M{i}"] = T(Mi, one) + T(one, Mi)
        ant[f"M{i}"] = -Mi
        cop[f"P{i}"] = T(Pk, Pi) + T(one, Pk)
        ant[f"P{i}"] = -(Pk * Pii)
        extra = TensorElement(A, 2, {})
        anti = A.zero()
        for j in SPATIAL:
            for m in SPATIAL:
                e = levi_civita(i, j, m)
                if e:
                    extra = extra + T(A.gen(f"P{j}") * Pii, A.gen(f"M{m}")).scale(e)
                    anti = anti + (A.gen(f"P{j}") * A.gen(f"M{m}")).scale(e)
        cop[f"N{i}"] = T(Ni, one) + T(Pii, Ni) - extra.scale(kinv)
        ant[f"N{i}"] = -(Pi * Ni) - anti.scale(kinv)
    counits = {"Pi": 1, "Pii": 1}
    return HopfStructure(A, cop, ant, counits, None, f"U_kappa(io13), kappa={A.kappa}")


def check_q_hopf(A: PresentedAlgebra, H: HopfStructure | None = None) -> Report:
    """Exact Hopf axioms, bracket compatibility and group-likeness of Pi."""
    H = H or q_hopf(A)
    rep = check_hopf_axioms(H, None, relations=True)
    d = H.coproducts[A.index["Pi"]] * H.coproducts[A.index["Pii"]]
    rep.add_residual("grouplike(Pi Pi^-1)", d - TensorElement.unit(A))
    return rep


# ---------------------------------------------------------------------------
# classical action and smash consistency
# ---------------------------------------------------------------------------

def kappa_minkowski(kappa=1) -> GeneratorSystem:
    """[X^0, X^i] = (i/kappa) X^i."""
    return an(4, kappa=kappa)


def classical_action(H: HopfStructure, module: GeneratorSystem | None = None) -> HopfAction:
    """P_i |> X^nu = -i delta, M and N rotate/boost, Pi^{+-1} |> X^mu = X^mu -+ (i/kappa) delta_0."""
    kappa = H.sys.kappa
    module = module or kappa_minkowski(kappa)
    kinv = as_gaussian(kappa).inverse()
    X = [module.gen(f"X{m}") for m in range(4)]
    table = {"Pi": {}, "Pii": {}}
    for mu in range(4):
        shift = kinv * I if mu == 0 else ZERO
        table["Pi"][f"X{mu}"] = X[mu] - module.scalar(shift)
        table["Pii"][f"X{mu}"] = X[mu] + module.scalar(shift)
    for i in SPATIAL:
        table[f"P{i}"] = {f"X{i}": module.scalar(-I)}
        rot = {}
        for j in SPATIAL:
            acc = module.zero()
            for k in SPATIAL:
                e = levi_civita(i, j, k)
                if e:
                    acc = acc + X[k].scale(I * e)
            rot[f"X{j}"] = acc
        table[f"M{i}"] = rot
        boost = {"X0": X[i].scale(I)}
        boost[f"X{i}"] = X[0].scale(I)
        table[f"N{i}"] = boost
    return HopfAction(H, module, table, f"classical action (kappa={kappa})")


def check_q_smash(kappa=1) -> Report:
    """Module-algebra consistency and the generated cross relations against the presented table."""
    hopf_alg = build_presented(kappa, coordinates=False)
    H = q_hopf(hopf_alg)
    A = classical_action(H)
    rep = check_covariance(A)
    S, cross = smash_system(A)
    full = build_presented(kappa, coordinates=True)
    for (L, x), generated in sorted(cross.items()):
        expected = full.gen(L) * full.gen(x) - full.gen(x) * full.gen(L)
        rep.add_residual(f"cross[{L},{x}]", transport(generated, full) - expected)
    return rep


def transport(a: AlgebraElement, target: GeneratorSystem) -> AlgebraElement:
    """Rewrite an element in another system with the same generator names."""
    out = target.zero()
    for w, s in a.terms.items():
        mono = target.word([a.sys.generators[g].name for g in w])
        for k, c in s.items():
            out = out + mono.shift(k).scale(c)
    return out


# ---------------------------------------------------------------------------
# Casimir and cross-module consistency
# ---------------------------------------------------------------------------

def q_casimir(A: PresentedAlgebra) -> AlgebraElement:
    """kappa^2 (Pi + Pi^-1 - 2) - P^2 Pi^-1."""
    k = as_gaussian(A.kappa)
    Pii = A.gen("Pii")
    psq = sum((A.gen(f"P{m}") * A.gen(f"P{m}") for m in SPATIAL), A.zero())
    return (A.gen("Pi") + Pii - 2).scale(k * k) - psq * Pii


def casimir_report(A: PresentedAlgebra) -> Report:
    """[C, g] = 0 for every Hopf generator; [C, X_mu] is recorded as information."""
    C = q_casimir(A)
    rep = Report()
    for g in ["Pi", "Pii"] + [f"{b}{i}" for b in "PMN" for i in SPATIAL]:
        rep.add_residual(f"[C,{g}]", commutator(A, C, A.gen(g)))
    return rep


def casimir_coordinate_brackets(A: PresentedAlgebra) -> dict:
    """[C_kappa, X^mu] in normal form (no closed form is asserted for these)."""
    C = q_casimir(A)
    return {f"X{m}": commutator(A, C, A.gen(f"X{m}")) for m in range(4)}


def hadic_boost_check(order: int = 2) -> Report:
    """[N_i, h P_0 + sqrt(1 - h^2 P^2)] = -i h P_i in the h-adic classical basis."""
    from .hopf import kappa_pi
    from .pbw import io13_physical
    S = io13_physical()
    pi, _, _ = kappa_pi(S, order)
    rep = Report()
    for i in SPATIAL:
        lhs = commutator(S, S.gen(f"N{i}"), pi).truncate(order)
        rep.add_residual(f"[N{i},Pi]", lhs + S.gen(f"P{i}").shift(1).scale(I))
    return rep


# ---------------------------------------------------------------------------
# rescaling isomorphism
# ---------------------------------------------------------------------------

def rescaling_map(k1, k2, literal: bool = False) -> dict:
    """Diagonal generator images for a map U_k1 -> U_k2.

    Default: P_i -> (k1/k2) P_i and every X^mu -> (k2/k1) X^mu.
    ``literal=True``: P_i -> (k2/k1) P_i, X^0 -> (k1/k2) X^0, the rest fixed;
    this version is not a homomorphism unless k1 == k2.
    """
    r = Fraction(k1) / Fraction(k2)
    if literal:
        images = {f"P{i}": 1 / r for i in SPATIAL}
        images["X0"] = r
        return images
    images = {f"P{i}": r for i in SPATIAL}
    for mu in range(4):
        images[f"X{mu}"] = 1 / r
    return images


def rescaling_isomorphism(k1, k2, images: dict | None = None) -> Report:
    """Check a diagonal generator map sends every defining relation and the coproducts of A to B."""
    A = build_presented(k1)
    B = build_presented(k2)
    images = images if images is not None else rescaling_map(k1, k2)

    def phi(a: AlgebraElement) -> AlgebraElement:
        out = B.zero()
        for w, s in a.terms.items():
            c = ONE
            names = [A.generators[g].name for g in w]
            for nm in names:
                c = c * as_gaussian(images.get(nm, 1))
            mono = B.word(names)
            for k, x in s.items():
                out = out + mono.shift(k).scale(x * c)
        return out

    rep = Report()
    n = len(A.generators)
    for j in range(n):
        for i in range(j):
            a, b = A.generators[j].name, A.generators[i].name
            lhs = commutator(B, phi(A.gen(a)), phi(A.gen(b)))
            rhs = phi(AlgebraElement(A, A.brackets.get((j, i), {})))
            rep.add_residual(f"relation[{a},{b}]", lhs - rhs)
    HA = q_hopf(build_presented(k1, coordinates=False))
    HB = q_hopf(build_presented(k2, coordinates=False))
    for g, D in sorted(HA.coproducts.items()):
        name = HA.sys.generators[g].name
        mapped = TensorElement(HB.sys, 2, {})
        for (w1, w2), s in D.terms.items():
            c = ONE
            for w in (w1, w2):
                for x in w:
                    c = c * as_gaussian(images.get(HA.sys.generators[x].name, 1))
            left = HB.sys.word([HA.sys.generators[x].name for x in w1])
            right = HB.sys.word([HA.sys.generators[x].name for x in w2])
            mapped = mapped + TensorElement.of(left, right).scale(s[0] * c)
        scale = as_gaussian(images.get(name, 1))
        target = coproduct_apply(HB, HB.sys.gen(name)).scale(scale)
        rep.add_residual(f"coproduct[{name}]", mapped - target)
    return rep


# ---------------------------------------------------------------------------
# rational functions of the commuting (P_1, P_2, P_3, Pi)
# ---------------------------------------------------------------------------
# exponent tuples (e1, e2, e3, e0); e0 (the Pi power) may be negative

NVARS = 4
PI_VAR = 3
_FACTORS: dict = {}


def _padd(a: dict, b: dict, sign=1) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, ZERO) + (c if sign == 1 else -c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, ZERO) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _pscale(a: dict, c) -> dict:
    c = as_gaussian(c)
    return {m: x * c for m, x in a.items()} if c else {}


def _pderiv(a: dict, var: int) -> dict:
    out: dict = {}
    for m, c in a.items():
        e = m[var]
        if e:
            m2 = list(m)
            m2[var] -= 1
            out[tuple(m2)] = c * e
    return out


def _key(poly: dict) -> tuple:
    return tuple(sorted((m, c.re, c.im) for m, c in poly.items()))


def _normalize_factor(poly: dict):
    """Split poly = unit * f with f monic and of lowest Pi power 0; returns (unit poly, key)."""
    lo = min(m[PI_VAR] for m in poly)
    shift = tuple(0 if v != PI_VAR else lo for v in range(NVARS))
    f = {tuple(x - y for x, y in zip(m, shift)): c for m, c in poly.items()}
    lead_m = max(f)
    lead = f[lead_m]
    f = {m: c / lead for m, c in f.items()}
    unit = {shift: lead}
    key = _key(f)
    _FACTORS[key] = f
    return unit, key


def _is_monomial(poly: dict) -> bool:
    return len(poly) == 1


def _monomial_inverse(poly: dict) -> dict:
    (m, c), = poly.items()
    if any(e for v, e in enumerate(m) if v != PI_VAR):
        raise ZeroDivisionError("only powers of Pi are invertible monomials")
    return {tuple(-e for e in m): c.inverse()}


class RatFunc:
    """num / prod(factor^power); factors are normalized and never monomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: dict, den: dict | None = None):
        self.num = {m: as_gaussian(c) for m, c in num.items() if c}
        self.den = dict(den or {})

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls({(0,) * NVARS: as_gaussian(c)})

    @classmethod
    def var(cls, v: int, power: int = 1) -> "RatFunc":
        m = [0] * NVARS
        m[v] = power
        return cls({tuple(m): ONE})

    @classmethod
    def inverse_of(cls, poly: dict) -> "RatFunc":
        if not poly:
            raise ZeroDivisionError("vanishing denominator")
        if _is_monomial(poly):
            return cls(_monomial_inverse(poly))
        unit, key = _normalize_factor(poly)
        return cls(_monomial_inverse(unit), {key: 1})

    def is_zero(self) -> bool:
        return not self.num

    def _lift(self, den: dict) -> dict:
        """Numerator over the larger denominator ``den``."""
        num = self.num
        for key, p in den.items():
            extra = p - self.den.get(key, 0)
            for _ in range(extra):
                num = _pmul(num, _FACTORS[key])
        return num

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        den = dict(self.den)
        for k, p in other.den.items():
            den[k] = max(den.get(k, 0), p)
        return RatFunc(_padd(self._lift(den), other._lift(den)), den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pscale(self.num, -1), self.den)

    def __sub__(self, other):
        return self + (-other if isinstance(other, RatFunc) else RatFunc.const(-as_gaussian(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            return RatFunc(_pscale(self.num, other), self.den)
        den = dict(self.den)
        for k, p in other.den.items():
            den[k] = den.get(k, 0) + p
        return RatFunc(_pmul(self.num, other.num), den)

    __rmul__ = __mul__

    def deriv(self, var: int) -> "RatFunc":
        """Quotient rule over the factored denominator."""
        out = RatFunc(_pderiv(self.num, var), self.den)
        for key, p in self.den.items():
            f = _FACTORS[key]
            df = _pderiv(f, var)
            if not df:
                continue
            den = dict(self.den)
            den[key] = den[key] + 1
            out = out - RatFunc(_pscale(_pmul(self.num, df), p), den)
        return out

    def __str__(self):
        def ptxt(p):
            return " + ".join(f"({c})*P^{m}" for m, c in sorted(p.items())) or "0"
        if not self.den:
            return ptxt(self.num)
        dens = " * ".join(f"[{ptxt(_FACTORS[k])}]^{p}" for k, p in sorted(self.den.items()))
        return f"({ptxt(self.num)}) / ({dens})"


# ---------------------------------------------------------------------------
# localized elements
# ---------------------------------------------------------------------------

class LocalizedElement:
    """sum over normal-ordered X-words w of X^w f_w(P, Pi)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: "LocalizedCalculus", terms: dict):
        self.ctx = ctx
        self.terms = {w: f for w, f in terms.items() if not f.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def nterms(self) -> int:
        return sum(len(f.num) for f in self.terms.values())

    order = None

    def __add__(self, other):
        other = self.ctx.coerce(other)
        terms = dict(self.terms)
        for w, f in other.terms.items():
            terms[w] = terms[w] + f if w in terms else f
        return LocalizedElement(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedElement(self.ctx, {w: -f for w, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.ctx.coerce(other))

    def __rsub__(self, other):
        return self.ctx.coerce(other) - self

    def scale(self, c) -> "LocalizedElement":
        return LocalizedElement(self.ctx, {w: f * c for w, f in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, (LocalizedElement, RatFunc)):
            return self.scale(other)
        return self.ctx.multiply(self, self.ctx.coerce(other))

    def __rmul__(self, other):
        return self.ctx.coerce(other) * self

    def __str__(self):
        parts = []
        for w, f in sorted(self.terms.items()):
            mono = "*".join(f"X{g}" for g in w) or "1"
            parts.append(f"{mono}*[{f}]")
        return " + ".join(parts) or "0"


class LocalizedCalculus:
    """Commutators of X^mu with f(P, Pi) follow the derivation rule
    [X^j, f] = i Pi d f/d P_j and [X^0, f] = (i/kappa) Pi d f/d Pi."""

    def __init__(self, kappa=1):
        self.kappa = Fraction(kappa)
        self.xsys = kappa_minkowski(self.kappa)
        self._move_cache: dict = {}

    def coerce(self, a) -> LocalizedElement:
        if isinstance(a, LocalizedElement):
            return a
        if isinstance(a, RatFunc):
            return LocalizedElement(self, {(): a})
        return LocalizedElement(self, {(): RatFunc.const(a)})

    # generators ----------------------------------------------------------
    def X(self, mu: int) -> LocalizedElement:
        return LocalizedElement(self, {(mu,): RatFunc.const(1)})

    def P(self, i: int) -> RatFunc:
        return RatFunc.var(i - 1)

    def Pi(self, power: int = 1) -> RatFunc:
        return RatFunc.var(PI_VAR, power)

    def psq(self) -> RatFunc:
        return sum((self.P(i) * self.P(i) for i in SPATIAL), RatFunc.const(0))

    def fn(self, f: RatFunc) -> LocalizedElement:
        return self.coerce(f)

    # commutators ---------------------------------------------------------
    def x_bracket(self, mu: int, f: RatFunc) -> RatFunc:
        """[X^mu, f]."""
        if mu == 0:
            return self.Pi() * f.deriv(PI_VAR) * (I / as_gaussian(self.kappa))
        return self.Pi() * f.deriv(mu - 1) * I

    def _move(self, f: RatFunc, w: tuple) -> list:
        """f X^w as a list of (normal-ordered X word, function)."""
        if not w:
            return [((), f)]
        head, rest = w[0], w[1:]
        out = []
        # f X^a = X^a f - [X^a, f]
        for w2, g in self._move(f, rest):
            for w3, s in self.xsys._mono_mul((head,), w2).items():
                out.append((w3, g * s[0]))
        comm = self.x_bracket(head, f)
        if not comm.is_zero():
            for w2, g in self._move(comm, rest):
                out.append((w2, -g))
        return out

    def multiply(self, a: LocalizedElement, b: LocalizedElement) -> LocalizedElement:
        terms: dict = {}
        for wa, fa in a.terms.items():
            for wb, fb in b.terms.items():
                for w2, g in self._move(fa, wb):
                    for w3, s in self.xsys._mono_mul(wa, w2).items():
                        val = g * fb * s[0]
                        terms[w3] = terms[w3] + val if w3 in terms else val
        return LocalizedElement(self, terms)

    def commutator(self, a, b) -> LocalizedElement:
        a, b = self.coerce(a), self.coerce(b)
        return a * b - b * a

    # realizations ------------------------------------------------------
    def _base(self):
        kinv = Fraction(1) / self.kappa
        one = RatFunc.const(1)
        lam = one - self.psq() * (kinv * kinv)           # 1 - kappa^-2 P^2
        d1 = self.Pi() + self.Pi(-1) * lam               # Pi + Pi^-1 (1 - kappa^-2 P^2)
        d2 = self.Pi(2) + lam                            # Pi^2 + 1 - kappa^-2 P^2
        return kinv, lam, d1, d2

    def energy(self) -> RatFunc:
        """p_0 = (kappa/2)(Pi - Pi^-1 (1 - kappa^-2 P^2)); [N_i, P_j] = -i delta_ij p_0."""
        _, lam, _, _ = self._base()
        return (self.Pi() - self.Pi(-1) * lam) * (self.kappa / 2)

    def weyl_embedding(self, printed: bool = False) -> tuple:
        """Canonical (x^mu, p_mu) inside the kappa-Weyl algebra.

        ``printed=True`` uses a plus sign on the X^0 term of x^i; that version
        fails [p_0, x^i] = 0.
        """
        kinv, lam, d1, d2 = self._base()
        d1inv = RatFunc.inverse_of(d1.num)
        d2inv = RatFunc.inverse_of(d2.num)
        sign = 1 if printed else -1
        x = [self.X(0) * (d1inv * 2)]
        for i in SPATIAL:
            x.append(self.X(i) * self.Pi(-1) + self.X(0) * (d2inv * self.P(i) * (2 * kinv * sign)))
        p = [self.fn(self.energy())] + [self.fn(self.P(i)) for i in SPATIAL]
        return x, p

    def lorentz_realization(self, printed: bool = False) -> tuple:
        """M_i and N_i in terms of (X, P, Pi).

        The amended boost is x_0 p_i - x_i p_0 in the canonical variables,
        which simplifies to -X^0 P_i Pi^-1 - (kappa/2) X^i (1 - Pi^-2 (1 - kappa^-2 P^2)).
        """
        kinv, lam, d1, d2 = self._base()
        d1inv = RatFunc.inverse_of(d1.num)
        d2inv = RatFunc.inverse_of(d2.num)
        M, N = {}, {}
        tail = (RatFunc.const(1) - self.Pi(-2) * lam) * (self.kappa / 2)
        for i in SPATIAL:
            acc = self.coerce(0)
            for j in SPATIAL:
                for k in SPATIAL:
                    e = levi_civita(i, j, k)
                    if e:
                        inner = self.X(j) * self.Pi(-1) + self.X(0) * (self.P(j) * d2inv * (2 * kinv))
                        acc = acc + inner * self.P(k) * e
            M[i] = acc
            if printed:
                frac = (RatFunc.const(3) - self.Pi(-2) * lam) * d1inv
                N[i] = self.X(0) * (self.P(i) * frac) + self.X(i) * tail
            else:
                N[i] = -(self.X(0) * (self.P(i) * self.Pi(-1)) + self.X(i) * tail)
        return M, N

    def casimir(self) -> RatFunc:
        """kappa^2 (Pi + Pi^-1 - 2) - P^2 Pi^-1."""
        k = self.kappa
        return (self.Pi() + self.Pi(-1) - 2) * (k * k) - self.psq() * self.Pi(-1)


def _eps_combo(L: LocalizedCalculus, vec: dict, i: int, j: int, scale) -> LocalizedElement:
    out = L.coerce(0)
    for k in SPATIAL:
        e = levi_civita(i, j, k)
        if e:
            out = out + L.coerce(vec[k]).scale(scale * e)
    return out


def weyl_checks(L: LocalizedCalculus, printed: bool = False) -> Report:
    """[p_mu, x^nu] = -i delta (equivalently [p_mu, x_nu] = -i eta), x and p commuting among themselves."""
    rep = Report()
    x, p = L.weyl_embedding(printed)
    for mu in range(4):
        for nu in range(4):
            target = -I if mu == nu else ZERO
            rep.add_residual(f"weyl:[p{mu},x{nu}]", L.commutator(p[mu], x[nu]) - target)
            if nu > mu:
                rep.add_residual(f"weyl:[x{mu},x{nu}]", L.commutator(x[mu], x[nu]))
                rep.add_residual(f"weyl:[p{mu},p{nu}]", L.commutator(p[mu], p[nu]))
    return rep


def lorentz_checks(L: LocalizedCalculus, printed: bool = False) -> Report:
    """Realized M_i, N_i against the rotation/boost brackets, [N, P], [N, Pi] and the cross relations."""
    rep = Report()
    M, N = L.lorentz_realization(printed)
    kinv = as_gaussian(Fraction(1) / L.kappa)
    Pfun = {k: L.fn(L.P(k)) for k in SPATIAL}
    Xsp = {k: L.X(k) for k in SPATIAL}
    for i in SPATIAL:
        for j in SPATIAL:
            rep.add_residual(f"lorentz:[M{i},M{j}]", L.commutator(M[i], M[j]) - _eps_combo(L, M, i, j, I))
            rep.add_residual(f"lorentz:[M{i},N{j}]", L.commutator(M[i], N[j]) - _eps_combo(L, N, i, j, I))
            rep.add_residual(f"lorentz:[N{i},N{j}]", L.commutator(N[i], N[j]) - _eps_combo(L, M, i, j, -I))
            rep.add_residual(f"lorentz:[M{i},P{j}]", L.commutator(M[i], Pfun[j]) - _eps_combo(L, Pfun, i, j, I))
            target = L.fn(L.energy() * (-I)) if i == j else L.coerce(0)
            rep.add_residual(f"lorentz:[N{i},P{j}]", L.commutator(N[i], Pfun[j]) - target)
            rep.add_residual(f"lorentz:[M{i},X{j}]", L.commutator(M[i], L.X(j)) - _eps_combo(L, Xsp, i, j, I))
            nx = _eps_combo(L, M, i, j, I * kinv)
            if i == j:
                nx = nx + L.X(0).scale(I)
            rep.add_residual(f"lorentz:[N{i},X{j}]", L.commutator(N[i], L.X(j)) - nx)
        rep.add_residual(f"lorentz:[M{i},Pi]", L.commutator(M[i], L.fn(L.Pi())))
        rep.add_residual(f"lorentz:[N{i},Pi]", L.commutator(N[i], L.fn(L.Pi())) - L.fn(L.P(i) * (-I * kinv)))
        rep.add_residual(f"lorentz:[M{i},X0]", L.commutator(M[i], L.X(0)))
        rep.add_residual(f"lorentz:[N{i},X0]", L.commutator(N[i], L.X(0)) - L.X(i).scale(I) - N[i].scale(I * kinv))
    return rep


def casimir_checks(L: LocalizedCalculus, printed: bool = False) -> Report:
    """C_kappa commutes with the realized M, N and with P, Pi."""
    rep = Report()
    C = L.fn(L.casimir())
    M, N = L.lorentz_realization(printed)
    for i in SPATIAL:
        rep.add_residual(f"casimir:[C,P{i}]", L.commutator(C, L.fn(L.P(i))))
        rep.add_residual(f"casimir:[C,M{i}]", L.commutator(C, M[i]))
        rep.add_residual(f"casimir:[C,N{i}]", L.commutator(C, N[i]))
    rep.add_residual("casimir:[C,Pi]", L.commutator(C, L.fn(L.Pi())))
    return rep


def casimir_coordinate_relation(L: LocalizedCalculus) -> Report:
    """[C_kappa, X_mu] = 2i p_mu with lower X_0 = -X^0 and p_0 the canonical energy."""
    rep = Report()
    C = L.fn(L.casimir())
    _, p = L.weyl_embedding()
    for mu in range(4):
        low = -1 if mu == 0 else 1
        rep.add_residual(f"casimir:[C,X_{mu}]", L.commutator(C, L.X(mu).scale(low)) - p[mu].scale(2 * I))
    return rep


def localized_checks(kappa=1, printed: bool = False) -> Report:
    """Weyl embedding, Lorentz realization and Casimir in the localized calculus."""
    L = LocalizedCalculus(kappa)
    rep = Report()
    rep.extend(weyl_checks(L, printed))
    rep.extend(lorentz_checks(L, printed))
    rep.extend(casimir_checks(L, printed))
    rep.extend(casimir_coordinate_relation(L))
    return rep
