"""PBW normal ordering for algebras given by ordered generators plus a
straightening table.

A monomial is stored as a nondecreasing tuple of generator indices (its
"word").  The table holds, for each pair ``j > i``, the commutator
``g_j g_i - g_i g_j`` as an element whose coefficients may depend on h
(polynomially, or as a truncated series when ``cap`` is set).

Elements keep their terms as ``{word: {k: c}}`` where ``k`` is the power of
h (negative powers allowed) and ``c`` a GaussianRational.  ``order`` is the
highest trustworthy power of h; ``None`` means the element is exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .report import Report
from .scalars import ONE, ZERO, I, HSeries, as_gaussian

ETA = ((-1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def _min_order(*orders):
    finite = [o for o in orders if o is not None]
    return min(finite) if finite else None


def levi_civita(i: int, j: int, k: int) -> int:
    """Totally antisymmetric symbol on {1,2,3}."""
    if len({i, j, k}) < 3:
        return 0
    perm = [i, j, k]
    sign = 1
    for a in range(3):
        for b in range(a + 1, 3):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# generator systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    name: str
    block: str
    indices: tuple = ()
    self_adjoint: bool = True


class GeneratorSystem:
    """Ordered generators with a straightening table.

    ``brackets`` maps ``(j, i)`` with ``j > i`` to ``{word: {k: c}}`` holding
    the commutator ``[g_j, g_i]``.
    """

    def __init__(self, name: str, generators: list[Generator], brackets=None,
                 metric=ETA, cap: int | None = None):
        self.name = name
        self.generators = list(generators)
        self.index = {g.name: n for n, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            raise ValueError("duplicate generator names")
        self.metric = metric
        self.cap = cap
        self.brackets: dict = {}
        for (j, i), terms in (brackets or {}).items():
            self._install(j, i, terms)
        self._gen_cache: dict = {}
        self._mono_cache: dict = {}

    def _install(self, j: int, i: int, terms):
        if j == i:
            if _clean(terms):
                raise ValueError(f"nonzero self-commutator for {self.generators[j].name}")
            return
        if j < i:
            j, i = i, j
            terms = {w: {k: -c for k, c in s.items()} for w, s in terms.items()}
        terms = _clean(terms)
        if self.cap is not None:
            terms = _truncate_terms(terms, self.cap)
        old = self.brackets.get((j, i))
        if old is not None and _clean(_sub_terms(old, terms)):
            raise ValueError(
                f"inconsistent table entries for [{self.generators[j].name}, {self.generators[i].name}]"
            )
        if terms:
            self.brackets[(j, i)] = terms

    def __repr__(self):
        return f"GeneratorSystem({self.name!r}, {len(self.generators)} generators)"

    # element constructors -------------------------------------------------
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def gen(self, name: str) -> "AlgebraElement":
        return AlgebraElement(self, {(self.index[name],): {0: ONE}})

    def __getitem__(self, name: str) -> "AlgebraElement":
        return self.gen(name)

    def scalar(self, c, k: int = 0) -> "AlgebraElement":
        c = as_gaussian(c)
        return AlgebraElement(self, {(): {k: c}} if c else {})

    def one(self) -> "AlgebraElement":
        return self.scalar(1)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def h(self, power: int = 1) -> "AlgebraElement":
        return self.scalar(1, power)

    def from_series(self, s: HSeries) -> "AlgebraElement":
        terms = {(): {k: c for k, c in enumerate(s.coeffs, start=s.low) if c}}
        return AlgebraElement(self, terms, order=s.eff)

    def word(self, names: Iterable[str]) -> "AlgebraElement":
        out = self.one()
        for n in names:
            out = out * self.gen(n)
        return out

    # core straightening ---------------------------------------------------
    def _mul_gen(self, w: tuple, g: int) -> dict:
        key = (w, g)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        if not w or w[-1] <= g:
            res = {w + (g,): {0: ONE}}
        else:
            a = w[-1]
            u = w[:-1]
            res: dict = {}
            # u a g = (u g) a + u [a, g]
            for w1, s1 in self._mul_gen(u, g).items():
                for w2, s2 in self._mul_gen(w1, a).items():
                    _acc_series(res, w2, _smul(s1, s2, self.cap))
            comm = self.brackets.get((a, g))
            if comm:
                for cw, cs in comm.items():
                    for w2, s2 in self._mono_mul(u, cw).items():
                        _acc_series(res, w2, _smul(cs, s2, self.cap))
            res = _clean(res)
        self._gen_cache[key] = res
        return res

    def _mono_mul(self, u: tuple, v: tuple) -> dict:
        """Normal form of the word u followed by the (arbitrary) word v."""
        if not v:
            return {u: {0: ONE}}
        if not u and len(v) == 1:
            return {v: {0: ONE}}
        key = (u, v)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        if len(v) == 1:
            res = self._mul_gen(u, v[0])
        else:
            res = {}
            for w1, s1 in self._mono_mul(u, v[:-1]).items():
                for w2, s2 in self._mul_gen(w1, v[-1]).items():
                    _acc_series(res, w2, _smul(s1, s2, self.cap))
            res = _clean(res)
        self._mono_cache[key] = res
        return res

    def clear_caches(self):
        self._gen_cache.clear()
        self._mono_cache.clear()

    # API mirrors ----------------------------------------------------------
    def multiply(self, a, b):
        return multiply(self, a, b)

    def commutator(self, a, b):
        return commutator(self, a, b)

    def parse(self, text: str) -> "AlgebraElement":
        return parse_element(self, text)


def _clean(terms: dict) -> dict:
    out = {}
    for w, s in terms.items():
        s2 = {k: c for k, c in s.items() if c}
        if s2:
            out[w] = s2
    return out


def _truncate_terms(terms: dict, top) -> dict:
    if top is None:
        return terms
    out = {}
    for w, s in terms.items():
        s2 = {k: c for k, c in s.items() if k <= top}
        if s2:
            out[w] = s2
    return out


def _sub_terms(a: dict, b: dict) -> dict:
    out = {w: dict(s) for w, s in a.items()}
    for w, s in b.items():
        t = out.setdefault(w, {})
        for k, c in s.items():
            t[k] = t.get(k, ZERO) - c
    return out


def _smul(s1: dict, s2: dict, top) -> dict:
    if len(s1) == 1 and len(s2) == 1:
        (k1, c1), = s1.items()
        (k2, c2), = s2.items()
        if top is not None and k1 + k2 > top:
            return {}
        return {k1 + k2: c1 * c2}
    out: dict = {}
    for k1, c1 in s1.items():
        for k2, c2 in s2.items():
            k = k1 + k2
            if top is not None and k > top:
                continue
            out[k] = out.get(k, ZERO) + c1 * c2
    return out


def _acc_series(res: dict, w, s: dict):
    t = res.get(w)
    if t is None:
        if s:
            res[w] = dict(s)
        return
    for k, c in s.items():
        t[k] = t.get(k, ZERO) + c


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class AlgebraElement:
    """Normal-ordered element; terms ``{word: {h_power: GaussianRational}}``."""

    __slots__ = ("sys", "terms", "order")

    def __init__(self, sys: GeneratorSystem, terms: dict, order: int | None = None):
        self.sys = sys
        if order is not None:
            terms = _truncate_terms(terms, order)
        self.terms = _clean(terms)
        self.order = order

    # basic data -----------------------------------------------------------
    @property
    def low(self) -> int:
        ks = [k for s in self.terms.values() for k in s]
        return min(ks) if ks else 0

    @property
    def high(self) -> int:
        ks = [k for s in self.terms.values() for k in s]
        return max(ks) if ks else 0

    def is_zero(self) -> bool:
        return not self.terms

    def is_regular(self) -> bool:
        return self.low >= 0

    def nterms(self) -> int:
        return sum(len(s) for s in self.terms.values())

    def coefficient(self, word, context: int | None = None) -> HSeries:
        """Coefficient series of a monomial (given as word tuple or names)."""
        if word and isinstance(word[0], str):
            word = tuple(sorted(self.sys.index[n] for n in word))
        s = self.terms.get(tuple(word), {})
        ctx = context if context is not None else (self.order if self.order is not None else max([0, self.high]))
        if not s:
            return HSeries([], ctx)
        lo = min(s)
        hi = max(s)
        eff = self.order if self.order is not None else ctx
        return HSeries([s.get(k, ZERO) for k in range(lo, hi + 1)], max(ctx, eff), lo, eff)

    def h_coefficient(self, k: int) -> "AlgebraElement":
        """The exact element multiplying h^k."""
        return AlgebraElement(self.sys, {w: {0: s[k]} for w, s in self.terms.items() if k in s})

    def classical_limit(self) -> "AlgebraElement":
        return self.h_coefficient(0)

    def truncate(self, order: int | None) -> "AlgebraElement":
        return AlgebraElement(self.sys, self.terms, _min_order(self.order, order))

    def with_order(self, order):
        return self.truncate(order)

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            if other.sys is not self.sys:
                raise ValueError("elements belong to different generator systems")
            return other
        if isinstance(other, HSeries):
            return self.sys.from_series(other)
        return self.sys.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        order = _min_order(self.order, other.order)
        terms = {w: dict(s) for w, s in self.terms.items()}
        for w, s in other.terms.items():
            _acc_series(terms, w, s)
        return AlgebraElement(self.sys, terms, order)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.sys, {w: {k: -c for k, c in s.items()} for w, s in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "AlgebraElement":
        c = as_gaussian(c)
        if not c:
            return AlgebraElement(self.sys, {}, self.order)
        return AlgebraElement(self.sys, {w: {k: x * c for k, x in s.items()} for w, s in self.terms.items()}, self.order)

    def shift(self, k: int) -> "AlgebraElement":
        """Multiply by h^k (k may be negative; that lowers the trusted order)."""
        order = None if self.order is None else self.order + k
        return AlgebraElement(self.sys, {w: {p + k: c for p, c in s.items()} for w, s in self.terms.items()}, order)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self.sys, self, other)
        if isinstance(other, HSeries):
            return multiply(self.sys, self, self.sys.from_series(other))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, HSeries):
            return multiply(self.sys, self.sys.from_series(other), self)
        return self.scale(other)

    def __pow__(self, n: int):
        out = self.sys.one().truncate(self.order)
        for _ in range(n):
            out = out * self
        return out

    def equals(self, other, upto: int | None = None) -> bool:
        diff = self - other
        if upto is not None:
            diff = diff.truncate(upto)
        return diff.is_zero()

    def __eq__(self, other):
        try:
            return (self - other).is_zero()
        except (TypeError, ValueError):
            return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"AlgebraElement({self})"

    def __str__(self):
        return format_terms(self.sys, self.terms, self.order)


def format_word(sys: GeneratorSystem, w: tuple) -> str:
    if not w:
        return "1"
    parts = []
    n = 0
    while n < len(w):
        m = n
        while m < len(w) and w[m] == w[n]:
            m += 1
        name = sys.generators[w[n]].name
        parts.append(name if m - n == 1 else f"{name}^{m - n}")
        n = m
    return "*".join(parts)


def format_terms(sys, terms: dict, order=None) -> str:
    if not terms:
        body = "0"
    else:
        chunks = []
        for w in sorted(terms, key=lambda t: (len(t), t)):
            for k in sorted(terms[w]):
                c = terms[w][k]
                hk = "" if k == 0 else ("*h" if k == 1 else f"*h^{k}")
                chunks.append(f"({c}){hk}*{format_word(sys, w)}")
        body = " + ".join(chunks)
    if order is not None:
        body += f" + O(h^{order + 1})"
    return body


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def multiply(sys: GeneratorSystem, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a.sys is not sys or b.sys is not sys:
        raise ValueError("multiply: elements from a different generator system")
    order = None
    if a.order is not None or b.order is not None:
        inf = float("inf")
        oa = inf if a.order is None else a.order
        ob = inf if b.order is None else b.order
        o = min(oa + min(b.low, 0), ob + min(a.low, 0))
        order = None if o == inf else int(o)
    order = _min_order(order, sys.cap)
    res: dict = {}
    for w1, s1 in a.terms.items():
        for w2, s2 in b.terms.items():
            conv = _smul(s1, s2, order)
            if not conv:
                continue
            if not w2:
                prod = {w1: {0: ONE}}
            elif not w1:
                prod = {w2: {0: ONE}}
            else:
                prod = sys._mono_mul(w1, w2)
            for w, s in prod.items():
                _acc_series(res, w, _smul(conv, s, order))
    return AlgebraElement(sys, res, order)


def commutator(sys: GeneratorSystem, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return multiply(sys, a, b) - multiply(sys, b, a)


def dagger(sys: GeneratorSystem, a: AlgebraElement) -> AlgebraElement:
    """Antilinear anti-involution fixing every (self-adjoint) generator; h is real."""
    res: dict = {}
    for w, s in a.terms.items():
        for g in set(w):
            if not sys.generators[g].self_adjoint:
                raise ValueError(f"generator {sys.generators[g].name} is not flagged self-adjoint")
        rev = sys._mono_mul((), tuple(reversed(w))) if w else {(): {0: ONE}}
        conj = {k: c.conjugate() for k, c in s.items()}
        for w2, s2 in rev.items():
            _acc_series(res, w2, _smul(conj, s2, a.order))
    return AlgebraElement(sys, res, a.order)


def check_relations(sys: GeneratorSystem, relations, label: str = "relation") -> Report:
    """Each relation is ``(lhs, rhs)`` or ``(id, lhs, rhs)``; strings are parsed."""
    rep = Report()
    for n, rel in enumerate(relations):
        if len(rel) == 3:
            rid, lhs, rhs = rel
        else:
            lhs, rhs = rel
            rid = f"{label}[{n}]"
        if isinstance(lhs, str):
            lhs = parse_element(sys, lhs)
        if isinstance(rhs, str):
            rhs = parse_element(sys, rhs)
        rep.add_residual(rid, lhs - rhs)
    return rep


# ---------------------------------------------------------------------------
# expression parsing (custom tables, tests, CLI)
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()\[\],]))"
)


def _tokenize(text: str) -> list:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"cannot tokenize {text[pos:]!r}")
        for kind in ("num", "name", "op"):
            if m.group(kind) is not None:
                out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, sys, text, symbols=None):
        self.sys = sys
        self.toks = _tokenize(text)
        self.pos = 0
        self.symbols = symbols or {}

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, val=None):
        tok = self.peek()
        if val is not None and tok[1] != val:
            raise ValueError(f"expected {val!r}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self):
        e = self.expr()
        if self.pos != len(self.toks):
            raise ValueError(f"trailing input near {self.peek()[1]!r}")
        return e

    def expr(self):
        out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self):
        out = self.unary()
        while True:
            kind, val = self.peek()
            if val == "*":
                self.take()
                out = out * self.unary()
            elif kind in ("num", "name") or val in ("(", "["):
                out = out * self.unary()
            else:
                return out

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "num" or not val.isdigit():
                raise ValueError("exponents must be nonnegative integers")
            n = int(val)
            if neg:
                if base.terms != {(): {1: ONE}}:
                    raise ValueError("negative exponents only allowed on h")
                return self.sys.scalar(1, -n)
            return base ** n
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.sys.scalar(Fraction(val))
        if kind == "name":
            if val == "i":
                return self.sys.scalar(I)
            if val == "h":
                return self.sys.h()
            if val in self.symbols:
                return self.symbols[val]
            if val in self.sys.index:
                return self.sys.gen(val)
            raise ValueError(f"unknown symbol {val!r}")
        if val == "(":
            e = self.expr()
            self.take(")")
            return e
        if val == "[":
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            return commutator(self.sys, a, b)
        raise ValueError(f"unexpected token {val!r}")


def parse_element(sys: GeneratorSystem, text: str, symbols=None) -> AlgebraElement:
    """Parse sums of products of numbers, ``i``, ``h``, generator names,
    parentheses, ``^n`` powers and ``[a, b]`` commutators."""
    return _Parser(sys, text, symbols).parse()


class _RawSystem(GeneratorSystem):
    """A system with no relations, used to read table right-hand sides as words."""

    def _mul_gen(self, w, g):
        return {w + (g,): {0: ONE}}


def parse_table(text: str, generators: list[Generator], name: str = "custom",
                metric=ETA) -> GeneratorSystem:
    """Build a system from lines ``g_j g_i -> expr`` (expr contains ``g_i g_j``)."""
    raw = _RawSystem(name + "-raw", generators, {}, metric)
    brackets: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ValueError(f"line {lineno}: missing '->'")
        lhs, rhs = line.split("->", 1)
        names = lhs.split()
        if len(names) != 2 or any(n not in raw.index for n in names):
            raise ValueError(f"line {lineno}: left side must be two generator names")
        a, b = raw.index[names[0]], raw.index[names[1]]
        if a == b:
            raise ValueError(f"line {lineno}: a generator commutes with itself")
        expr = parse_element(raw, rhs).terms
        swapped = (b, a)
        lead = expr.get(swapped, {})
        if lead != {0: ONE}:
            raise ValueError(f"line {lineno}: right side must contain {names[1]} {names[0]} with coefficient 1")
        comm = {w: s for w, s in expr.items() if w != swapped}
        if (a, b) in comm:
            raise ValueError(f"line {lineno}: right side repeats the left word")
        # a b = b a + comm  =>  [a, b] = comm
        key = (max(a, b), min(a, b))
        entry = comm if a > b else {w: {k: -c for k, c in s.items()} for w, s in comm.items()}
        if key in brackets and _clean(_sub_terms(brackets[key], entry)):
            raise ValueError(f"line {lineno}: inconsistent with an earlier entry for the same pair")
        brackets[key] = entry
    return GeneratorSystem(name, generators, brackets, metric)


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

class _Builder:
    """Collects brackets [a, b] = sum c * word (words given by names)."""

    def __init__(self, gens: list[Generator]):
        self.gens = gens
        self.index = {g.name: n for n, g in enumerate(gens)}
        self.table: dict = {}

    def set(self, a: str, b: str, combo: list):
        """combo: list of (coeff, names tuple, hpow)."""
        ia, ib = self.index[a], self.index[b]
        terms: dict = {}
        for item in combo:
            c, names = item[0], item[1]
            k = item[2] if len(item) > 2 else 0
            w = tuple(sorted(self.index[n] for n in names))
            _acc_series(terms, w, {k: as_gaussian(c)})
        terms = _clean(terms)
        if ia > ib:
            key, entry = (ia, ib), terms
        else:
            key, entry = (ib, ia), {w: {k: -c for k, c in s.items()} for w, s in terms.items()}
        if key in self.table and _clean(_sub_terms(self.table[key], entry)):
            raise ValueError(f"conflicting preset entries for [{a}, {b}]")
        if entry:
            self.table[key] = entry


def _weyl_gens(n: int) -> list[Generator]:
    return [Generator(f"x{m}", "x", (m,)) for m in range(n)] + [Generator(f"p{m}", "p", (m,)) for m in range(n)]


def _weyl_rules(b: _Builder, n: int, momentum: str = "p"):
    for mu in range(n):
        # [p_mu, x^nu] = -i delta
        b.set(f"{momentum}{mu}", f"x{mu}", [(-I, ())])


def weyl(n: int = 4, metric=ETA) -> GeneratorSystem:
    gens = _weyl_gens(n)
    b = _Builder(gens)
    _weyl_rules(b, n)
    return GeneratorSystem(f"weyl({n})", gens, b.table, metric)


def _igl_gens(n: int, trace_basis: bool, momentum: str = "P") -> list[Generator]:
    gens = [Generator(f"{momentum}{m}", "P", (m,)) for m in range(n)]
    for mu in range(n):
        for nu in range(n):
            if trace_basis and mu == nu == n - 1:
                gens.append(Generator("D", "L", ()))
            else:
                gens.append(Generator(f"L{mu}{nu}", "L", (mu, nu)))
    return gens


def _gl_vector(n: int, mu: int, nu: int, trace_basis: bool) -> dict:
    """L^mu_nu in the chosen basis, as {name: coeff}."""
    if trace_basis and mu == nu == n - 1:
        out = {"D": 1}
        for k in range(1, n - 1):
            out[f"L{k}{k}"] = -1
        return out
    return {f"L{mu}{nu}": 1}


def _igl_rules(b: _Builder, n: int, trace_basis: bool, momentum: str = "P", coords: bool = False):
    """igl(n) brackets; in the trace basis D = sum_{k>=1} L^k_k replaces L^{n-1}_{n-1}."""

    def basis(mu, nu):
        return _gl_vector(n, mu, nu, trace_basis)

    def gl_bracket(mu, nu, rho, lam):
        # [L^mu_nu, L^rho_lam] = -i d^rho_nu L^mu_lam + i d^mu_lam L^rho_nu
        out: dict = {}
        if rho == nu:
            for name, c in basis(mu, lam).items():
                out[name] = out.get(name, 0) - I * c
        if mu == lam:
            for name, c in basis(rho, nu).items():
                out[name] = out.get(name, 0) + I * c
        return out

    # express each basis generator of the L block as a combination of L^mu_nu
    def expansion(name):
        if name == "D":
            return {(k, k): 1 for k in range(1, n)}
        mu, nu = int(name[1]), int(name[2])
        return {(mu, nu): 1}

    lnames = [g.name for g in b.gens if g.block == "L"]
    for x in range(len(lnames)):
        for y in range(x + 1, len(lnames)):
            acc: dict = {}
            for (mu, nu), c1 in expansion(lnames[x]).items():
                for (rho, lam), c2 in expansion(lnames[y]).items():
                    for name, c in gl_bracket(mu, nu, rho, lam).items():
                        acc[name] = acc.get(name, 0) + c * c1 * c2
            b.set(lnames[x], lnames[y], [(c, (name,)) for name, c in acc.items() if c])
        for lam in range(n):
            # [L^mu_nu, P_lam] = i d^mu_lam P_nu
            combo = []
            for (mu, nu), c in expansion(lnames[x]).items():
                if mu == lam:
                    combo.append((I * c, (f"{momentum}{nu}",)))
            b.set(lnames[x], f"{momentum}{lam}", combo)
            if coords:
                # [L^mu_nu, x^lam] = -i d^lam_nu x^mu
                combo = []
                for (mu, nu), c in expansion(lnames[x]).items():
                    if nu == lam:
                        combo.append((-I * c, (f"x{mu}",)))
                b.set(lnames[x], f"x{lam}", combo)


def igl(n: int = 4, trace_basis: bool = False) -> GeneratorSystem:
    gens = _igl_gens(n, trace_basis)
    b = _Builder(gens)
    _igl_rules(b, n, trace_basis)
    return GeneratorSystem(f"igl({n}{', D' if trace_basis else ''})", gens, b.table)


def weyl_igl(n: int = 4, trace_basis: bool = False) -> GeneratorSystem:
    """Double crossed product X^n >< (T^n >< U(gl(n))): coordinates, momenta, L."""
    gens = [Generator(f"x{m}", "x", (m,)) for m in range(n)] + _igl_gens(n, trace_basis)
    b = _Builder(gens)
    _weyl_rules(b, n, momentum="P")
    _igl_rules(b, n, trace_basis, coords=True)
    return GeneratorSystem(f"weyl_igl({n}{', D' if trace_basis else ''})", gens, b.table)


def _io13_gens(momentum: str = "P") -> list[Generator]:
    return (
        [Generator(f"{momentum}{m}", "P", (m,)) for m in range(4)]
        + [Generator(f"M{m}", "M", (m,)) for m in (1, 2, 3)]
        + [Generator(f"N{m}", "N", (m,)) for m in (1, 2, 3)]
    )


def _io13_rules(b: _Builder, momentum: str = "P"):
    P = momentum
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            combo_mm, combo_mn, combo_nn = [], [], []
            for k in (1, 2, 3):
                e = levi_civita(i, j, k)
                if e:
                    combo_mm.append((I * e, (f"M{k}",)))
                    combo_mn.append((I * e, (f"N{k}",)))
                    combo_nn.append((-I * e, (f"M{k}",)))
            if i < j:
                b.set(f"M{i}", f"M{j}", combo_mm)
                b.set(f"N{i}", f"N{j}", combo_nn)
            b.set(f"M{i}", f"N{j}", combo_mn)
            # [M_j, P_k] = i eps_jkl P_l ; [N_j, P_k] = -i delta_jk P_0
            b.set(f"M{i}", f"{P}{j}", [(I * levi_civita(i, j, l), (f"{P}{l}",)) for l in (1, 2, 3) if levi_civita(i, j, l)])
            b.set(f"N{i}", f"{P}{j}", [(-I, (f"{P}0",))] if i == j else [])
        b.set(f"N{i}", f"{P}0", [(-I, (f"{P}{i}",))])


def io13_physical() -> GeneratorSystem:
    gens = _io13_gens()
    b = _Builder(gens)
    _io13_rules(b)
    return GeneratorSystem("io13_physical", gens, b.table)


def weyl_io13() -> GeneratorSystem:
    """Weyl extension of io(1,3): coordinates x^mu, momenta P_mu, M_i, N_i.

    The classical action on coordinates is the one induced by the Heisenberg
    realization M_i = eps_ijk x^j P_k, N_i = x_0 P_i - x_i P_0.
    """
    gens = [Generator(f"x{m}", "x", (m,)) for m in range(4)] + _io13_gens()
    b = _Builder(gens)
    _weyl_rules(b, 4, momentum="P")
    _io13_rules(b)
    for i in (1, 2, 3):
        b.set(f"M{i}", "x0", [])
        # [M_i, x^j] = i eps_ijk x^k
        for j in (1, 2, 3):
            b.set(f"M{i}", f"x{j}", [(I * levi_civita(i, j, k), (f"x{k}",)) for k in (1, 2, 3) if levi_civita(i, j, k)])
            # [N_i, x^j] = i delta_ij x^0
            b.set(f"N{i}", f"x{j}", [(I, ("x0",))] if i == j else [])
        # [N_i, x^0] = i x^i
        b.set(f"N{i}", "x0", [(I, (f"x{i}",))])
    return GeneratorSystem("weyl_io13", gens, b.table)


def an(n: int = 4, h=None, kappa=None) -> GeneratorSystem:
    """Solvable kappa-Minkowski algebra on upper-index X^mu: [X^0, X^k] = i c X^k.

    With ``kappa`` given c = 1/kappa (a number); otherwise c is the formal h.
    """
    gens = [Generator(f"X{m}", "X", (m,)) for m in range(n)]
    b = _Builder(gens)
    for k in range(1, n):
        if kappa is not None:
            kap = Fraction(kappa)
            if kap == 0:
                raise ValueError("kappa must be nonzero")
            b.set("X0", f"X{k}", [(I / as_gaussian(kap), (f"X{k}",))])
        else:
            b.set("X0", f"X{k}", [(I, (f"X{k}",), 1)])
    tag = f"kappa={kappa}" if kappa is not None else "h"
    return GeneratorSystem(f"an({n}, {tag})", gens, b.table)


def make_algebra(preset: str, **params) -> GeneratorSystem:
    """Dispatch by preset name: weyl, igl, io13_physical, an, weyl_io13, weyl_igl, custom."""
    if preset == "weyl":
        return weyl(params.get("n", 4), params.get("metric", ETA))
    if preset == "igl":
        return igl(params.get("n", 4), params.get("trace_basis", False))
    if preset == "weyl_igl":
        return weyl_igl(params.get("n", 4), params.get("trace_basis", False))
    if preset == "io13_physical":
        return io13_physical()
    if preset == "weyl_io13":
        return weyl_io13()
    if preset == "an":
        return an(params.get("n", 4), kappa=params.get("kappa"))
    if preset == "custom":
        gens = params["generators"]
        if gens and isinstance(gens[0], str):
            gens = [Generator(g, "custom") for g in gens]
        return parse_table(params["table"], gens, params.get("name", "custom"))
    raise ValueError(f"unknown preset {preset!r}")


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------

def check_confluence(sys: GeneratorSystem, triples=None) -> Report:
    """Straighten g_k g_j g_i (k > j > i) by resolving either overlap first."""
    rep = Report()
    n = len(sys.generators)
    if triples is None:
        triples = [(k, j, i) for k in range(n) for j in range(k + 1) for i in range(j + 1)
                   if not (k == j == i)]
    for k, j, i in triples:
        gk, gj, gi = (AlgebraElement(sys, {(x,): {0: ONE}}) for x in (k, j, i))
        left = multiply(sys, multiply(sys, gk, gj), gi)
        right = multiply(sys, gk, multiply(sys, gj, gi))
        names = ",".join(sys.generators[x].name for x in (k, j, i))
        rep.add_residual(f"overlap({names})", left - right)
    return rep


def jacobi(sys: GeneratorSystem, a, b, c) -> AlgebraElement:
    return (commutator(sys, a, commutator(sys, b, c))
            + commutator(sys, b, commutator(sys, c, a))
            + commutator(sys, c, commutator(sys, a, b)))


def lower_index_sign(sys: GeneratorSystem, mu: int) -> int:
    return sys.metric[mu][mu]
