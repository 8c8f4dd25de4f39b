"""Hopf module-algebra actions, twisted star products and smash products.

A module algebra is any GeneratorSystem; the commutative coordinate algebra
is the special case with no brackets, whose normal-ordered words are exactly
commutative monomials.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hopf import (
    HopfStructure,
    TensorElement,
    Twist,
    _L,
    binomial_coeffs,
    dilatation,
    element_series,
    exp_coeffs,
    kappa_poincare,
    primitive_hopf,
    twist_system,
)
from .pbw import (
    AlgebraElement,
    Generator,
    GeneratorSystem,
    _acc_series,
    _min_order,
    _smul,
    levi_civita,
    weyl,
    weyl_igl,
)
from .report import Report
from .scalars import I, ONE, as_gaussian


# ---------------------------------------------------------------------------
# coordinate algebras
# ---------------------------------------------------------------------------

def coordinate_algebra(n: int = 4, prefix: str = "x") -> GeneratorSystem:
    """Commutative polynomial algebra in x^0..x^{n-1}."""
    return GeneratorSystem(f"poly({n})", [Generator(f"{prefix}{m}", "x", (m,)) for m in range(n)])


PolyElement = AlgebraElement


def exponents(word: tuple, n: int) -> tuple:
    """Multi-exponent of a commutative monomial word."""
    e = [0] * n
    for g in word:
        e[g] += 1
    return tuple(e)


def poly_from_exponents(sys: GeneratorSystem, data: dict) -> AlgebraElement:
    """Build a polynomial from {multi-exponent: coefficient or {k: c}}."""
    terms: dict = {}
    for exps, c in data.items():
        w = tuple(g for g, e in enumerate(exps) for _ in range(e))
        s = c if isinstance(c, dict) else {0: as_gaussian(c)}
        _acc_series(terms, w, {k: as_gaussian(v) for k, v in s.items()})
    return AlgebraElement(sys, terms)


def solvable_coordinates(n: int = 4, coeff=1, hpow: int = 1) -> GeneratorSystem:
    """[X^0, X^k] = i c h^p X^k on upper-index generators X^mu."""
    gens = [Generator(f"X{m}", "X", (m,)) for m in range(n)]
    c = as_gaussian(coeff)
    br = {}
    for k in range(1, n):
        # stored as [X^k, X^0] = -i c h^p X^k
        br[(k, 0)] = {(k,): {hpow: -I * c}}
    return GeneratorSystem(f"an({n}, {coeff}h^{hpow})", gens, br)


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

class HopfAction:
    """Action of a Hopf structure on a module algebra, fixed on generators."""

    def __init__(self, hopf: HopfStructure, module: GeneratorSystem, table: dict, name: str = "action"):
        self.hopf = hopf
        self.module = module
        self.name = name
        hs = hopf.sys
        self.table = {}
        for g, images in table.items():
            gi = hs.index[g] if isinstance(g, str) else g
            row = {}
            for x, img in images.items():
                xi = module.index[x] if isinstance(x, str) else x
                row[xi] = img
            self.table[gi] = row
        self._cache: dict = {}

    def __repr__(self):
        return f"HopfAction({self.name!r})"

    def with_hopf(self, hopf: HopfStructure) -> "HopfAction":
        """Same generator table, different coproduct (e.g. a twisted one)."""
        return HopfAction(hopf, self.module, self.table, self.name)

    def _gen_on_word(self, g: int, w: tuple) -> dict:
        """g |> (module word w) as terms."""
        key = (g, w)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        H = self.hopf
        if not w:
            c = H.counit_word((g,))
            res = {(): {0: c}} if c else {}
        elif len(w) == 1:
            row = self.table.get(g)
            if row is None:
                raise KeyError(f"no action entry for {H.sys.generators[g].name}")
            img = row.get(w[0])
            res = dict(img.terms) if img is not None else {}
        else:
            first, rest = (w[0],), w[1:]
            res = {}
            order = H.order
            for (w1, w2), s in H.delta_word((g,)).terms.items():
                a = self._word_on_word(w1, first)
                if not a:
                    continue
                b = self._word_on_word(w2, rest)
                if not b:
                    continue
                for ma, sa in a.items():
                    for mb, sb in b.items():
                        prod = self.module._mono_mul(ma, mb)
                        base = _smul(_smul(s, sa, order), sb, order)
                        for mw, sw in prod.items():
                            _acc_series(res, mw, _smul(base, sw, order))
        self._cache[key] = res
        return res

    def _word_on_word(self, hw: tuple, mw: tuple) -> dict:
        """(hopf word) |> (module word): compose generator actions right to left."""
        key = ("w", hw, mw)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not hw:
            res = {mw: {0: ONE}}
        else:
            inner = self._word_on_word(hw[1:], mw)
            res = {}
            order = self.hopf.order
            for w, s in inner.items():
                for w2, s2 in self._gen_on_word(hw[0], w).items():
                    _acc_series(res, w2, _smul(s, s2, order))
        res = {w: s for w, s in res.items() if any(s.values())}
        self._cache[key] = res
        return res


def act(A: HopfAction, L: AlgebraElement, f: AlgebraElement) -> AlgebraElement:
    """L |> f, extended to products through the coproduct."""
    order = _min_order(L.order, f.order, A.hopf.order)
    res: dict = {}
    for hw, hs in L.terms.items():
        for mw, ms in f.terms.items():
            base = _smul(hs, ms, order)
            for w, s in A._word_on_word(hw, mw).items():
                _acc_series(res, w, _smul(base, s, order))
    return AlgebraElement(A.module, res, order)


def act_tensor(A: HopfAction, T: TensorElement, f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """m(T |> (f (x) g)) = sum (t1 |> f)(t2 |> g)."""
    mod = A.module
    order = _min_order(T.order, f.order, g.order)
    res: dict = {}
    for (w1, w2), s in T.terms.items():
        a = act(A, AlgebraElement(A.hopf.sys, {w1: {0: ONE}}), f)
        if a.is_zero():
            continue
        b = act(A, AlgebraElement(A.hopf.sys, {w2: {0: ONE}}), g)
        if b.is_zero():
            continue
        prod = (a * b)
        for w, sp in prod.terms.items():
            _acc_series(res, w, _smul(s, sp, order))
    return AlgebraElement(mod, res, order)


def star_product(F: Twist, A: HopfAction, f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """f * g = m o F^{-1} |> (f (x) g)."""
    return act_tensor(A, F.inverse, f, g)


def star_commutator(F: Twist, A: HopfAction, f, g) -> AlgebraElement:
    return star_product(F, A, f, g) - star_product(F, A, g, f)


# ---------------------------------------------------------------------------
# preset actions
# ---------------------------------------------------------------------------

def igl_action(hopf: HopfStructure | None = None, n: int = 4, module: GeneratorSystem | None = None) -> HopfAction:
    """Classical igl(n) action: P_mu |> x^nu = -i d, L^mu_nu |> x^rho = -i d^rho_nu x^mu."""
    hopf = hopf or primitive_hopf(twist_system(n))
    module = module or coordinate_algebra(n)
    hs = hopf.sys
    xs = [module.gen(f"x{m}") for m in range(n)]
    table: dict = {}
    for g in hs.generators:
        row = {}
        if g.block == "P":
            (mu,) = g.indices
            row[f"x{mu}"] = module.scalar(-I)
        elif g.name == "D":
            for k in range(1, n):
                row[f"x{k}"] = xs[k].scale(-I)
        else:
            mu, nu = g.indices
            row[f"x{nu}"] = xs[mu].scale(-I)
        table[g.name] = row
    return HopfAction(hopf, module, table, "classical igl")


def poincare_action(hopf: HopfStructure, module: GeneratorSystem, a=-1) -> HopfAction:
    """Classical action of (P, M, N) on upper-index coordinates X^mu.

    P_mu |> X^nu = i a d, M_i |> X^j = i eps_ijk X^k, N_i |> X^j = i d_ij X^0,
    N_i |> X^0 = i X^i.
    """
    a = as_gaussian(a)
    X = [module.gen(module.generators[m].name) for m in range(4)]
    name = [module.generators[m].name for m in range(4)]
    table: dict = {}
    for mu in range(4):
        table[f"P{mu}"] = {name[mu]: module.scalar(I * a)}
    for i in (1, 2, 3):
        row = {}
        for j in (1, 2, 3):
            acc = module.zero()
            for k in (1, 2, 3):
                e = levi_civita(i, j, k)
                if e:
                    acc = acc + X[k].scale(I * e)
            row[name[j]] = acc
        table[f"M{i}"] = row
        row = {name[0]: X[i].scale(I)}
        row[name[i]] = X[0].scale(I)
        table[f"N{i}"] = row
    return HopfAction(hopf, module, table, f"classical Poincare (a={a})")


def kappa_covariance_setup(order: int, a=-1, coeff=1, hpow=1):
    """kappa-Poincare acting on [X^0, X^k] = i coeff h^hpow X^k with P |> X = i a."""
    H = kappa_poincare(order)
    module = solvable_coordinates(4, coeff, hpow)
    return poincare_action(H, module, a)


# ---------------------------------------------------------------------------
# covariance
# ---------------------------------------------------------------------------

def module_relations(module: GeneratorSystem):
    """Defining commutators [a_i, a_j] for i < j, read from the system's table."""
    rels = []
    n = len(module.generators)
    for i in range(n):
        for j in range(i + 1, n):
            terms = module.brackets.get((j, i), {})
            # [a_i, a_j] = -[a_j, a_i]
            rhs = AlgebraElement(module, {w: {k: -c for k, c in s.items()} for w, s in terms.items()})
            rels.append((i, j, rhs))
    return rels


def check_covariance(A: HopfAction, relations=None, order: int | None = None) -> Report:
    """(L1 |> a_i)(L2 |> a_j) - (L1 |> a_j)(L2 |> a_i) - L |> [a_i, a_j] == 0."""
    mod, H = A.module, A.hopf
    rels = relations if relations is not None else module_relations(mod)
    order = _min_order(order, H.order)
    rep = Report()
    for g in sorted(A.table):
        L = H.sys.generators[g].name
        D = H.coproducts[g]
        for i, j, rhs in rels:
            ai = AlgebraElement(mod, {(i,): {0: ONE}})
            aj = AlgebraElement(mod, {(j,): {0: ONE}})
            lhs = act_tensor(A, D, ai, aj) - act_tensor(A, D, aj, ai)
            target = act(A, H.sys.gen(L), rhs) if not rhs.is_zero() else mod.zero()
            res = (lhs - target).truncate(order)
            names = f"{mod.generators[i].name},{mod.generators[j].name}"
            rep.add_residual(f"covariance({L};{names})", res)
    return rep


def covariance_shift_residual(order: int, a=-1, coeff=1, hpow=1) -> Report:
    """Covariance of the kappa-Poincare classical action for a chosen shift b = coeff h^hpow."""
    A = kappa_covariance_setup(order, a, coeff, hpow)
    return check_covariance(A, order=order)


# ---------------------------------------------------------------------------
# smash products
# ---------------------------------------------------------------------------

def smash_system(A: HopfAction, module_relations_override: dict | None = None, cap: int | None = None):
    """Combined system: module generators first, then Hopf generators.

    Cross brackets come from L x = (L1 |> x) L2.  Returns (system, cross)
    where cross maps (hopf name, module name) -> [L, x] in the combined system.
    """
    mod, H = A.module, A.hopf
    hs = H.sys
    nm = len(mod.generators)
    gens = list(mod.generators) + list(hs.generators)
    br: dict = {}
    src = module_relations_override if module_relations_override is not None else mod.brackets
    for (j, i), t in src.items():
        br[(j, i)] = t
    for (j, i), t in hs.brackets.items():
        br[(j + nm, i + nm)] = {tuple(x + nm for x in w): s for w, s in t.items()}
    cap = _min_order(cap, H.order)
    cross = {}
    for g in sorted(A.table):
        D = H.coproducts[g]
        for x in range(nm):
            terms: dict = {}
            for (w1, w2), s in D.terms.items():
                img = A._word_on_word(w1, (x,))
                for mw, ms in img.items():
                    key = mw + tuple(y + nm for y in w2)
                    _acc_series(terms, key, _smul(s, ms, cap))
            _acc_series(terms, (x, g + nm), {0: -ONE})
            br[(g + nm, x)] = terms
            cross[(hs.generators[g].name, mod.generators[x].name)] = terms
    sys = GeneratorSystem(f"{mod.name} # {hs.name}", gens, br, cap=cap)
    cross = {k: AlgebraElement(sys, v, cap) for k, v in cross.items()}
    return sys, cross


def smash_cross_relations(H: HopfStructure, A: HopfAction, module_relations_override=None):
    """[L, x] for every Hopf generator L and module generator x, in the combined system."""
    A = A if A.hopf is H else A.with_hopf(H)
    sys, cross = smash_system(A, module_relations_override)
    return sys, sorted(cross.items())


def star_relations(F: Twist, A: HopfAction) -> dict:
    """Star commutators of coordinate generators as module bracket terms ((j, i) -> [x_j, x_i])."""
    mod = A.module
    out = {}
    n = len(mod.generators)
    for i in range(n):
        for j in range(i + 1, n):
            c = star_commutator(F, A, mod.gen(mod.generators[j].name), mod.gen(mod.generators[i].name))
            if not c.is_zero():
                out[(j, i)] = c.terms
    return out


# ---------------------------------------------------------------------------
# hat coordinates (pseudo-deformation)
# ---------------------------------------------------------------------------

def embed(sys_from: GeneratorSystem, sys_to: GeneratorSystem, a: AlgebraElement, rename=None) -> AlgebraElement:
    """Map an element to another system by generator name (a homomorphism onto the image)."""
    rename = rename or {}
    images = {}
    out = sys_to.zero().truncate(a.order)
    for w, s in a.terms.items():
        term = sys_to.one()
        for g in w:
            nm = sys_from.generators[g].name
            if nm not in images:
                tgt = rename.get(nm, nm)
                images[nm] = tgt if isinstance(tgt, AlgebraElement) else sys_to.gen(tgt)
            term = term * images[nm]
        out = out + AlgebraElement(sys_to, {w2: _smul(s, s2, a.order) for w2, s2 in term.terms.items()}, a.order)
    return out


def hat_map(F: Twist, A: HopfAction, target: GeneratorSystem, f: AlgebraElement, inverse: bool = True) -> AlgebraElement:
    """sum (fbar^a |> f) fbar_a inside the smash system ``target`` (coordinates then Hopf generators)."""
    T = F.inverse if inverse else F.forward
    order = T.order
    hs = A.hopf.sys
    res = target.zero().truncate(order)
    cache = {}
    for (w1, w2), s in T.terms.items():
        img = act(A, AlgebraElement(hs, {w1: {0: ONE}}), f)
        if img.is_zero():
            continue
        left = embed(A.module, target, img)
        if w2 not in cache:
            cache[w2] = embed(hs, target, AlgebraElement(hs, {w2: {0: ONE}}))
        term = (left * cache[w2]).truncate(order)
        res = res + AlgebraElement(target, {w: _smul(s, sw, order) for w, sw in term.terms.items()}, order)
    return res


@dataclass
class HatCoordinates:
    xhat: list
    system: GeneratorSystem
    roundtrip: Report


def hat_coordinates(F: Twist, A: HopfAction, target: GeneratorSystem | None = None) -> HatCoordinates:
    """x-hat^mu = (fbar^a |> x^mu) fbar_a and the round trip x = sum hat(f^a |> x) f_a."""
    n = len(A.module.generators)
    target = target or smash_target(A, F.order)
    xs = [A.module.gen(A.module.generators[m].name) for m in range(n)]
    xhat = [hat_map(F, A, target, x) for x in xs]
    order = F.order
    rep = Report()
    hs = A.hopf.sys
    for m, x in enumerate(xs):
        # hat is linear on degree <= 1 polynomials
        acc = target.zero().truncate(order)
        for (w1, w2), s in F.forward.terms.items():
            img = act(A, AlgebraElement(hs, {w1: {0: ONE}}), x)
            if img.is_zero():
                continue
            lin = target.zero()
            for w, sw in img.terms.items():
                if len(w) > 1:
                    raise ValueError("round trip expects a linear action on coordinates")
                base = target.one() if not w else xhat[w[0]]
                lin = lin + AlgebraElement(target, {ww: _smul(sw, s2, order) for ww, s2 in base.terms.items()}, order)
            term = (lin * embed(hs, target, AlgebraElement(hs, {w2: {0: ONE}}))).truncate(order)
            acc = acc + AlgebraElement(target, {w: _smul(s, sw, order) for w, sw in term.terms.items()}, order)
        rep.add_residual(f"roundtrip(x{m})", (acc - embed(A.module, target, x)).truncate(order))
    return HatCoordinates(xhat, target, rep)


def smash_target(A: HopfAction, cap: int | None = None) -> GeneratorSystem:
    """Undeformed smash product X >< U(igl): the weyl_igl system matching A's basis."""
    n = len(A.module.generators)
    trace = "D" in A.hopf.sys.index
    sys = weyl_igl(n, trace_basis=trace)
    if cap is not None:
        sys.cap = cap
    return sys


def heisenberg_realization(sys_from: GeneratorSystem, a: AlgebraElement, n: int = 4, target=None) -> AlgebraElement:
    """Replace L^mu_nu -> x^mu p_nu, D -> sum_k x^k p_k, P_mu -> p_mu in the Weyl algebra."""
    W = target or weyl(n)
    ren = {}
    for g in sys_from.generators:
        if g.block == "x":
            ren[g.name] = W.gen(g.name)
        elif g.block == "P":
            ren[g.name] = W.gen(f"p{g.indices[0]}")
        elif g.name == "D":
            acc = W.zero()
            for k in range(1, n):
                acc = acc + W.gen(f"x{k}") * W.gen(f"p{k}")
            ren[g.name] = acc
        elif g.block == "L":
            mu, nu = g.indices
            ren[g.name] = W.gen(f"x{mu}") * W.gen(f"p{nu}")
    return embed(sys_from, W, a, ren)


def poisson_h1_antisymmetric(F: Twist, A: HopfAction, f, g) -> AlgebraElement:
    """h^1 coefficient of f*g - g*f (to be compared with i {f, g})."""
    return star_commutator(F, A, f, g).h_coefficient(1)


# ---------------------------------------------------------------------------
# closed crossed-commutator tables [x-hat^mu, L]
# ---------------------------------------------------------------------------

def _series_p0(S: GeneratorSystem, coeffs, order):
    return element_series(S.gen("P0").shift(1), coeffs, order)


def crossed_commutator_table(kind: str, param, S: GeneratorSystem, order: int, printed: bool = True) -> dict:
    """Closed [x-hat^mu, L] for every igl generator L, as elements of the smash system S.

    ``printed=False`` applies the amendments found by the smash oracle:
    Abelian: +ihs L^k_0 in [x^0, L^k_0] and an e^{h(1-s)P0} factor on the
    ihs D term of [x^k, L^0_k]; Jordanian: opposite sign of the J_r-induced
    h-terms in [x^mu, L^0_k] and [x^mu, L^0_0].
    """
    n = sum(1 for g in S.generators if g.block == "P")
    x = [S.gen(f"x{m}") for m in range(n)]
    P = [S.gen(f"P{m}") for m in range(n)]
    zero = S.zero()
    out = {}
    if kind == "abelian":
        s = Fraction(param)
        e = lambda b: _series_p0(S, exp_coeffs(order, b), order)
        sgn = -1 if printed else 1
        for mu in range(n):
            d0 = 1 if mu == 0 else 0
            out[("P0", mu)] = S.scalar(I * d0)
            for k in range(1, n):
                dk = 1 if mu == k else 0
                out[(f"P{k}", mu)] = (e(1 - s).scale(I * dk) - P[k].scale(I * s * d0).shift(1))
                for m in range(1, n):
                    out[(f"L{m}{k}", mu)] = x[m].scale(I * dk)
                Lk0 = _L(S, k, 0)
                out[(f"L{k}0", mu)] = (x[k] * e(-(1 - s))).scale(I * d0) + Lk0.scale(sgn * I * s * d0).shift(1)
                L0k = _L(S, 0, k)
                dterm = dilatation(S) if printed else dilatation(S) * e(1 - s)
                val = ((x[0] * e(1 - s)).scale(I * dk) - L0k.scale(I * s * d0).shift(1)
                       + dterm.scale(I * s * dk).shift(1))
                if mu >= 1:
                    val = val - (x[mu] * P[k]).scale(I * (1 - s)).shift(1)
                out[(f"L0{k}", mu)] = val
            v = x[0].scale(I * d0) + dilatation(S).scale(I * s * d0).shift(1)
            if mu >= 1:
                v = v - (x[mu] * P[0]).scale(I * (1 - s)).shift(1)
            out[("L00", mu)] = v
    elif kind == "jordanian":
        r = Fraction(param)
        y = S.gen("P0").shift(1).scale(-r)
        pw = lambda b: element_series(y, binomial_coeffs(b, order), order)
        jsg = 1 if printed else -1
        q = (r + 1) / r
        for mu in range(n):
            d0 = 1 if mu == 0 else 0
            out[("P0", mu)] = pw(1).scale(I * d0)
            for k in range(1, n):
                dk = 1 if mu == k else 0
                out[(f"P{k}", mu)] = pw(-1 / r).scale(I * dk)
                for m in range(1, n):
                    out[(f"L{m}{k}", mu)] = x[m].scale(I * dk)
                out[(f"L{k}0", mu)] = (x[k] * pw(q)).scale(I * d0)
                inner = (x[mu] if mu >= 1 else x[0].scale(-r))
                out[(f"L0{k}", mu)] = ((x[0] * pw(-q)).scale(I * dk)
                                       + (inner * P[k] * pw(-1)).scale(jsg * I).shift(1))
            inner = (x[mu].scale(-1) if mu >= 1 else x[0].scale(r))
            out[("L00", mu)] = x[0].scale(I * d0) - (inner * P[0] * pw(-1)).scale(jsg * I).shift(1)
    else:
        raise ValueError(kind)
    table = {}
    for (L, mu), v in out.items():
        table[(L, f"x{mu}")] = v.truncate(order)
    # the trace basis generator D = sum_k L^k_k
    if "D" in S.index:
        for mu in range(n):
            acc = zero
            for k in range(1, n):
                acc = acc + out[(f"L{k}{k}", mu)]
            table[("D", f"x{mu}")] = acc.truncate(order)
        table = {key: v for key, v in table.items() if key[0] in S.index}
    return table


def compare_crossed(cross: dict, table: dict, order: int) -> Report:
    """cross holds [L, x]; table holds [x, L]."""
    rep = Report()
    for (L, x), val in sorted(cross.items()):
        if (L, x) not in table:
            continue
        rep.add_residual(f"[{x},{L}]", (table[(L, x)] + val).truncate(order))
    return rep
