"""Exact scalars: Gaussian rationals, truncated h-adic series, Taylor series.

Everything here is exact.  Gaussian rationals are stored as an integer
triple ``(a, b, d)`` meaning ``(a + b i) / d`` with ``d > 0`` and
``gcd(a, b, d) == 1``; that keeps the hot multiplication path on machine
integers instead of ``Fraction`` objects while still exposing reduced
``Fraction`` real and imaginary parts.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class GaussianRational:
    __slots__ = ("_a", "_b", "_d", "_hash")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        self._set(a, b, d)

    def _set(self, a, b, d):
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a, self._b, self._d = a, b, d
        self._hash = None

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        obj = object.__new__(cls)
        if d < 0:
            a, b, d = -a, -b, -d
        obj._set(a, b, d)
        return obj

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, int):
            return cls._raw(value, 0, 1)
        if isinstance(value, Fraction):
            return cls._raw(value.numerator, 0, value.denominator)
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, str):
            return parse_gaussian(value)
        raise TypeError(f"cannot coerce {value!r} to GaussianRational")

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self._a, -self._b, self._d)

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __eq__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            if self._b == 0:
                self._hash = hash(Fraction(self._a, self._d))
            else:
                self._hash = hash((self._a, self._b, self._d))
        return self._hash

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        d1, d2 = self._d, other._d
        if d1 == d2:
            return GaussianRational._raw(self._a + other._a, self._b + other._b, d1)
        return GaussianRational._raw(
            self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2
        )

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        a1, b1, a2, b2 = self._a, self._b, other._a, other._b
        if b1 == 0 and b2 == 0:
            return GaussianRational._raw(a1 * a2, 0, self._d * other._d)
        return GaussianRational._raw(
            a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._d * other._d
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        # 1/((a+bi)/d) = d (a - bi) / (a^2 + b^2)
        return GaussianRational._raw(self._d * self._a, -self._d * self._b, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers of Gaussian rationals are exact")
        base = self if n >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(n)):
            result = result * base
        return result

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        re_, im_ = self.re, self.im
        if im_ == 0:
            return str(re_)
        if re_ == 0:
            return f"{im_} i"
        sign = "+" if im_ > 0 else "-"
        return f"{re_}{sign}{abs(im_)} i"


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)
I = GaussianRational._raw(0, 1, 1)


def as_gaussian(value) -> GaussianRational:
    return GaussianRational.coerce(value)


def parse_rational(text: str) -> Fraction:
    """Exact rational from ``p/q``, an integer or a decimal (``1.2e19`` allowed)."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


_GAUSS_TERM = re.compile(
    r"\s*([+-]?)\s*((?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?)?\s*(\*?\s*i)?\s*"
)


def parse_gaussian(text: str) -> GaussianRational:
    """Parse ``a/b+c/d i`` style literals (also ``i``, ``-2i``, ``3/4``)."""
    s = text.strip()
    if not s:
        raise ValueError("empty Gaussian literal")
    re_part = Fraction(0)
    im_part = Fraction(0)
    pos = 0
    seen = False
    while pos < len(s):
        m = _GAUSS_TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse Gaussian rational {text!r}")
        sign, num, imag = m.groups()
        if (not num and not imag) or (seen and not sign):
            raise ValueError(f"cannot parse Gaussian rational {text!r}")
        value = parse_rational(num) if num else Fraction(1)
        if sign == "-":
            value = -value
        if imag:
            im_part += value
        else:
            re_part += value
        pos = m.end()
        seen = True
    if not seen:
        raise ValueError(f"cannot parse Gaussian rational {text!r}")
    return GaussianRational(re_part, im_part)


# ---------------------------------------------------------------------------
# coefficient-list kernels shared by HSeries and TaylorSeries
# ---------------------------------------------------------------------------

def _mul_lists(a: Sequence, b: Sequence, n: int, zero) -> list:
    out = [zero] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j in range(min(len(b), n - i)):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _inv_list(a: Sequence, n: int, zero, one) -> list:
    if not a or not a[0]:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = one / a[0]
    out = [inv0] + [zero] * (n - 1)
    for m in range(1, n):
        acc = zero
        for k in range(1, min(m, len(a) - 1) + 1):
            if a[k]:
                acc = acc + a[k] * out[m - k]
        out[m] = -acc * inv0
    return out


def _exp_list(a: Sequence, n: int, zero, one) -> list:
    if a and a[0]:
        raise ValueError("exp needs a series with zero constant term")
    out = [one] + [zero] * (n - 1)
    for m in range(1, n):
        acc = zero
        for k in range(1, min(m, len(a) - 1) + 1):
            if a[k]:
                acc = acc + a[k] * out[m - k] * k
        out[m] = acc * Fraction(1, m)
    return out


def _log_list(a: Sequence, n: int, zero, one) -> list:
    if not a or a[0] != one:
        raise ValueError("log needs a series with constant term 1")
    coef = list(a[:n]) + [zero] * max(0, n - len(a))
    out = [zero] * n
    for m in range(1, n):
        acc = coef[m] * m
        for k in range(1, m):
            if out[k] and coef[m - k]:
                acc = acc - out[k] * coef[m - k] * k
        out[m] = acc * Fraction(1, m)
    return out


def _pow_list(a: Sequence, beta: Fraction, n: int, zero, one) -> list:
    if not a or a[0] != one:
        raise ValueError("pow needs a series with constant term 1")
    coef = list(a[:n]) + [zero] * max(0, n - len(a))
    out = [one] + [zero] * (n - 1)
    for m in range(1, n):
        acc = zero
        for k in range(1, m + 1):
            if coef[k]:
                acc = acc + coef[k] * out[m - k] * (beta * k - (m - k))
        out[m] = acc * Fraction(1, m)
    return out


def _compose_list(f: Sequence, g: Sequence, n: int, zero, one) -> list:
    if g and g[0]:
        raise ValueError("compose needs an inner series with zero constant term")
    out = [zero] * n
    # Horner: f0 + g (f1 + g (f2 + ...))
    for c in reversed(list(f[:n])):
        out = _mul_lists(out, g, n, zero)
        out[0] = out[0] + c
    return out


# ---------------------------------------------------------------------------
# HSeries
# ---------------------------------------------------------------------------

class HSeries:
    """Truncated Laurent-tailed series in the formal parameter h.

    ``order`` is the truncation context N shared by every operand, ``low``
    the lowest stored power, and ``eff`` the highest power that is still
    trustworthy (``eff <= order``; dividing by h lowers it).
    """

    __slots__ = ("order", "low", "coeffs", "eff")

    def __init__(self, coeffs: Iterable = (), order: int = 6, low: int = 0, eff: int | None = None):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        eff = order if eff is None else min(eff, order)
        cs = [as_gaussian(c) for c in coeffs]
        cs = cs[: max(0, eff - low + 1)]
        start = 0
        while start < len(cs) and not cs[start]:
            start += 1
        cs = cs[start:]
        while cs and not cs[-1]:
            cs.pop()
        low = low + start if cs else 0
        if cs and low < -order:
            raise ValueError("principal part deeper than the truncation order")
        self.order = order
        self.eff = eff
        self.low = low
        self.coeffs = tuple(cs)

    # construction helpers
    @classmethod
    def constant(cls, c, order: int = 6) -> "HSeries":
        return cls([c], order)

    @classmethod
    def h(cls, order: int = 6, power: int = 1) -> "HSeries":
        return cls([1], order, low=power)

    @classmethod
    def parse(cls, text: str, order: int = 6) -> "HSeries":
        return cls([parse_gaussian(t) for t in text.split(",")], order)

    def __getitem__(self, k: int) -> GaussianRational:
        idx = k - self.low
        if 0 <= idx < len(self.coeffs):
            return self.coeffs[idx]
        return ZERO

    def dense(self, upto: int | None = None) -> list:
        """Coefficients of powers 0..upto (principal part ignored)."""
        upto = self.eff if upto is None else upto
        return [self[k] for k in range(upto + 1)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_regular(self) -> bool:
        return self.low >= 0

    def valuation(self) -> int | None:
        return None if not self.coeffs else self.low

    def _check(self, other: "HSeries"):
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def _lift(self, other) -> "HSeries":
        if isinstance(other, HSeries):
            self._check(other)
            return other
        return HSeries.constant(other, self.order)

    def __add__(self, other):
        other = self._lift(other)
        eff = min(self.eff, other.eff)
        lo = min(self.low, other.low)
        return HSeries([self[k] + other[k] for k in range(lo, eff + 1)], self.order, lo, eff)

    __radd__ = __add__

    def __neg__(self):
        return HSeries([-c for c in self.coeffs], self.order, self.low, self.eff)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, HSeries):
            c = as_gaussian(other)
            return HSeries([x * c for x in self.coeffs], self.order, self.low, self.eff)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return HSeries([], self.order, 0, min(self.eff, other.eff))
        eff = min(self.eff + min(other.low, 0), other.eff + min(self.low, 0))
        lo = self.low + other.low
        n = eff - lo + 1
        if n <= 0:
            return HSeries([], self.order, 0, eff)
        return HSeries(_mul_lists(self.coeffs, other.coeffs, n, ZERO), self.order, lo, eff)

    __rmul__ = __mul__

    def shift(self, k: int) -> "HSeries":
        """Multiply by h^k; negative k divides and costs |k| orders of trust."""
        eff = self.eff + min(k, 0)
        return HSeries(self.coeffs, self.order, self.low + k, eff)

    def invert(self) -> "HSeries":
        if self.is_zero():
            raise ZeroDivisionError("cannot invert the zero series")
        v = self.low
        # relative precision of the unit part is eff - v
        n = self.eff - v + 1
        unit = _inv_list(self.coeffs, n, ZERO, ONE)
        eff = min(self.order, self.eff - 2 * v)
        return HSeries(unit, self.order, -v, eff)

    def __truediv__(self, other):
        if isinstance(other, HSeries):
            return self * other.invert()
        return self * as_gaussian(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        out = HSeries.constant(1, self.order)
        for _ in range(n):
            out = out * self
        return out

    def exp(self) -> "HSeries":
        if self.low < 0 or self[0]:
            raise ValueError("exp is only defined on O(h) series")
        return HSeries(_exp_list(self.dense(), self.eff + 1, ZERO, ONE), self.order, 0, self.eff)

    def log(self) -> "HSeries":
        if self.low < 0 or self[0] != ONE:
            raise ValueError("log requires constant term 1")
        return HSeries(_log_list(self.dense(), self.eff + 1, ZERO, ONE), self.order, 0, self.eff)

    def pow(self, beta) -> "HSeries":
        if self.low < 0 or self[0] != ONE:
            raise ValueError("pow requires constant term 1")
        beta = Fraction(beta)
        return HSeries(_pow_list(self.dense(), beta, self.eff + 1, ZERO, ONE), self.order, 0, self.eff)

    def compose(self, g: "HSeries") -> "HSeries":
        """f(g(h)) for an O(h) series g."""
        self._check(g)
        if self.low < 0 or g.low < 0 or g[0]:
            raise ValueError("compose requires regular f and g with zero constant term")
        eff = min(self.eff, g.eff)
        return HSeries(_compose_list(self.dense(eff), g.dense(eff), eff + 1, ZERO, ONE), self.order, 0, eff)

    def truncate(self, eff: int) -> "HSeries":
        return HSeries(self.coeffs, self.order, self.low, min(eff, self.eff))

    def equals(self, other: "HSeries", upto: int | None = None) -> bool:
        """Coefficientwise equality up to the common effective order."""
        other = self._lift(other)
        top = min(self.eff, other.eff) if upto is None else upto
        lo = min(self.low, other.low)
        return all(self[k] == other[k] for k in range(lo, top + 1))

    def __eq__(self, other):
        if not isinstance(other, HSeries):
            try:
                other = HSeries.constant(other, self.order)
            except TypeError:
                return NotImplemented
        return self.order == other.order and self.equals(other)

    __hash__ = None

    def __repr__(self):
        return f"HSeries({self}, order={self.order})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs, start=self.low):
            if not c:
                continue
            tag = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
            parts.append(f"({c}){tag}" if tag else f"({c})")
        return " + ".join(parts) + f" + O(h^{self.eff + 1})"


def hseries_arith(a: HSeries, b: HSeries | None, op: str) -> HSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "invert":
        return a.invert()
    raise ValueError(f"unknown series operation {op!r}")


def hseries_functions(a: HSeries, f: str, arg=None) -> HSeries:
    if f == "exp":
        return a.exp()
    if f == "log":
        return a.log()
    if f == "pow":
        return a.pow(arg)
    if f == "compose":
        return a.compose(arg)
    raise ValueError(f"unknown series function {f!r}")


def ultra_norm(a: HSeries) -> Fraction:
    """2^{-n(a)} with n(a) the lowest nonzero power; 0 for the zero series."""
    if not a.is_regular():
        raise ValueError("ultra-norm is defined on regular series only")
    if a.is_zero():
        return Fraction(0)
    return Fraction(1, 2 ** a.low)


# ---------------------------------------------------------------------------
# TaylorSeries
# ---------------------------------------------------------------------------

class TaylorSeries:
    """Real Taylor coefficients of a one-variable function, truncated at ``order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable = (), order: int = 6):
        cs = [Fraction(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def parse(cls, text: str, order: int = 6) -> "TaylorSeries":
        vals = []
        for tok in text.split(","):
            g = parse_gaussian(tok)
            if not g.is_real():
                raise ValueError("Taylor coefficients must be real")
            vals.append(g.re)
        return cls(vals, order)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def _check(self, other):
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        if not isinstance(other, TaylorSeries):
            other = TaylorSeries([other], self.order)
        self._check(other)
        return TaylorSeries([x + y for x, y in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return TaylorSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TaylorSeries):
            return TaylorSeries([c * Fraction(other) for c in self.coeffs], self.order)
        self._check(other)
        return TaylorSeries(_mul_lists(self.coeffs, other.coeffs, self.order + 1, Fraction(0)), self.order)

    __rmul__ = __mul__

    def reciprocal(self) -> "TaylorSeries":
        return TaylorSeries(_inv_list(self.coeffs, self.order + 1, Fraction(0), Fraction(1)), self.order)

    def integrate(self) -> "TaylorSeries":
        """Antiderivative vanishing at 0 (top coefficient drops out of range)."""
        return TaylorSeries([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)], self.order)

    def derivative(self) -> "TaylorSeries":
        return TaylorSeries([k * c for k, c in enumerate(self.coeffs)][1:], self.order)

    def exp(self) -> "TaylorSeries":
        return TaylorSeries(_exp_list(self.coeffs, self.order + 1, Fraction(0), Fraction(1)), self.order)

    def log(self) -> "TaylorSeries":
        return TaylorSeries(_log_list(self.coeffs, self.order + 1, Fraction(0), Fraction(1)), self.order)

    def pow(self, beta) -> "TaylorSeries":
        return TaylorSeries(_pow_list(self.coeffs, Fraction(beta), self.order + 1, Fraction(0), Fraction(1)), self.order)

    def compose(self, g: "TaylorSeries") -> "TaylorSeries":
        return TaylorSeries(_compose_list(self.coeffs, g.coeffs, self.order + 1, Fraction(0), Fraction(1)), self.order)

    def scale_variable(self, c) -> "TaylorSeries":
        """f(c t)."""
        c = Fraction(c)
        return TaylorSeries([a * c**k for k, a in enumerate(self.coeffs)], self.order)

    def with_order(self, order: int) -> "TaylorSeries":
        return TaylorSeries(self.coeffs, order)

    def degree(self) -> int:
        d = -1
        for k, c in enumerate(self.coeffs):
            if c:
                d = k
        return d

    def __eq__(self, other):
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    __hash__ = None

    def __repr__(self):
        return f"TaylorSeries({[str(c) for c in self.coeffs]}, order={self.order})"


def build_psi_gamma(psi: TaylorSeries, gamma: TaylorSeries, order: int | None = None):
    """Return (Psi, Gamma) with Psi = exp(int dt/psi), Gamma = exp(int gamma dt/psi)."""
    order = psi.order if order is None else order
    psi = psi.with_order(order)
    gamma = gamma.with_order(order)
    if psi[0] != 1:
        raise ValueError("psi(0) must equal 1")
    inv = psi.reciprocal()
    big_psi = inv.integrate().exp()
    big_gamma = (gamma * inv).integrate().exp()
    return big_psi, big_gamma
