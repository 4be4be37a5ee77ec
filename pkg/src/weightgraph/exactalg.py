"""Exact univariate polynomials and rational functions over the rationals.

Public values (:class:`Poly`, :class:`RatFunc`) expose ``Fraction``
coefficients, lowest order first. Internally the heavy lifting (products,
gcds) runs on integer coefficient lists, which is what keeps sums of
terms like ``(1+z^a)(1+z^b)/((1-z^a)(1-z^b))`` cheap even when the labels
reach a few hundred.

Laurent expansion (:func:`expand`) is deliberately a separate mechanism:
plain series division on the ``Fraction`` coefficients, never touching the
gcd code. Tests use it as an oracle for :meth:`RatFunc.constant`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

__all__ = [
    "Poly",
    "RatFunc",
    "LaurentWindow",
    "poly_arith",
    "poly_gcd",
    "ratfunc_arith",
    "is_constant",
    "expand",
    "Z",
]

# ---------------------------------------------------------------------------
# integer polynomial kernel
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _iadd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _iscale(a: Sequence[int], c: int) -> list[int]:
    if c == 0:
        return []
    return [c * x for x in a]


_KRONECKER_CUTOFF = 24


def _imul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_CUTOFF:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _trim(out)
    # Kronecker substitution: pack into one big integer, let CPython multiply.
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    k = bound.bit_length() + 2
    pa = _pack(a, k)
    pb = _pack(b, k)
    return _unpack(pa * pb, k, len(a) + len(b) - 1)


def _pack(a: Sequence[int], k: int) -> int:
    x = 0
    for c in reversed(a):
        x = (x << k) + c
    return x


def _unpack(x: int, k: int, n: int) -> list[int]:
    mask = (1 << k) - 1
    half = 1 << (k - 1)
    out = []
    for _ in range(n):
        r = x & mask
        if r >= half:
            r -= 1 << k
        out.append(r)
        x = (x - r) >> k
    return _trim(out)


def _content(a: Sequence[int]) -> int:
    return reduce(math.gcd, a, 0)


def _primitive(a: Sequence[int]) -> list[int]:
    """Divide out the content and make the leading coefficient positive."""
    if not a:
        return []
    c = _content(a)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def _idivmod(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]] | None:
    """Division over Z; ``None`` if some quotient step is not integral."""
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    if len(r) <= db:
        return [], r
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        c = r[i + db]
        if c == 0:
            continue
        t, rem = divmod(c, lc)
        if rem:
            return None
        q[i] = t
        for j in range(db + 1):
            r[i + j] -= t * b[j]
    return _trim(q), _trim(r[:db])


def _iexact_div(a: Sequence[int], b: Sequence[int]) -> list[int]:
    res = _idivmod(a, b)
    if res is None or res[1]:
        raise ArithmeticError("inexact polynomial division")
    return res[0]


def _ieval(a: Sequence[int], x: int) -> int:
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


def _interpolate(h: int, x: int) -> list[int]:
    out = []
    while h:
        g = h % x
        if g > x // 2:
            g -= x
        out.append(g)
        h = (h - g) // x
    return out


def _divides(h: Sequence[int], f: Sequence[int]) -> bool:
    res = _idivmod(f, h)
    return res is not None and not res[1]


def _heuristic_gcd(f: list[int], g: list[int]) -> list[int] | None:
    # Evaluate at a large integer, take the integer gcd, read the polynomial
    # back from its balanced x-adic digits and verify by trial division.
    nf = max(map(abs, f))
    ng = max(map(abs, g))
    b = 2 * min(nf, ng) + 29
    x = max(min(b, 99 * math.isqrt(b)), 2 * min(nf // abs(f[-1]), ng // abs(g[-1])) + 2)
    for _ in range(6):
        ff = _ieval(f, x)
        gg = _ieval(g, x)
        if ff and gg:
            h = _primitive(_interpolate(math.gcd(ff, gg), x))
            if h and _divides(h, f) and _divides(h, g):
                return h
        x = 73794 * x * math.isqrt(math.isqrt(x)) // 27011
    return None


def _prs_gcd(f: list[int], g: list[int]) -> list[int]:
    a, b = f, g
    if len(a) < len(b):
        a, b = b, a
    while b:
        # pseudo-remainder
        r = list(a)
        db = len(b) - 1
        lc = b[-1]
        while len(r) - 1 >= db and r:
            c = r[-1]
            shift = len(r) - 1 - db
            r = [lc * x for x in r]
            for j in range(db + 1):
                r[shift + j] -= c * b[j]
            _trim(r)
        a, b = b, _primitive(r)
    return _primitive(a)


def _igcd(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Primitive gcd (positive leading coefficient) of two integer polynomials."""
    if not f:
        return _primitive(g)
    if not g:
        return _primitive(f)
    f = _primitive(f)
    g = _primitive(g)
    if len(f) == 1 or len(g) == 1:
        return [1]
    # common power of z
    s = 0
    while f[s] == 0 and g[s] == 0:
        s += 1
    f, g = f[s:], g[s:]
    h = _heuristic_gcd(f, g) if len(f) > 1 and len(g) > 1 else [1]
    if h is None:
        h = _prs_gcd(f, g)
    return [0] * s + h


def _clear_denominators(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    """Return (integer coefficients, common denominator d) with poly = ints / d."""
    d = 1
    for c in coeffs:
        d = d * c.denominator // math.gcd(d, c.denominator)
    return [int(c * d) for c in coeffs], d


# ---------------------------------------------------------------------------
# Poly
# ---------------------------------------------------------------------------

def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


class Poly:
    """Dense univariate polynomial in ``z`` with ``Fraction`` coefficients.

    ``coeffs[i]`` is the coefficient of ``z**i``; the zero polynomial has no
    coefficients. Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, n: int, c=1) -> Poly:
        return cls([0] * n + [c])

    @classmethod
    def _from_ints(cls, a: Sequence[int], denom: int = 1) -> Poly:
        return cls(Fraction(c, denom) for c in a)

    def _ints(self) -> tuple[list[int], int]:
        return _clear_denominators(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return Poly(c / lc for c in self.coeffs)

    def __call__(self, x):
        v = Fraction(0)
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        a, da = self._ints()
        b, db = other._ints()
        return Poly._from_ints(_imul(a, b), da * db)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(r) <= db:
            return Poly(), self
        q = [Fraction(0)] * (len(r) - db)
        lc = b[-1]
        for i in range(len(r) - 1 - db, -1, -1):
            c = r[i + db] / lc
            q[i] = c
            if c:
                for j in range(db + 1):
                    r[i + j] -= c * b[j]
        return Poly(q), Poly(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def shift_to_one(self) -> Poly:
        """Coefficients in ``t`` of ``p(1 + t)``."""
        n = len(self.coeffs)
        out = []
        for j in range(n):
            out.append(sum((self.coeffs[i] * math.comb(i, j) for i in range(j, n)), Fraction(0)))
        return Poly(out)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_poly(self)


def _coerce_poly(x) -> Poly | None:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly([x])
    return None


Z = Poly([0, 1])


def format_poly(p: Poly, var: str = "z") -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_arith(a: Poly, b: Poly, op: str):
    """Dispatch ``add``/``sub``/``mul``/``divrem`` on two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divrem":
        return divmod(a, b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    g = _igcd(a._ints()[0], b._ints()[0])
    return Poly._from_ints(g).monic()


# ---------------------------------------------------------------------------
# RatFunc
# ---------------------------------------------------------------------------

class RatFunc:
    """Rational function ``num/den`` kept in canonical form.

    Canonical form: ``gcd(num, den) = 1`` and ``den`` monic, so two equal
    functions have identical representations. Internally the function is
    stored as ``scale * N / D`` with ``N``, ``D`` primitive integer
    polynomials with positive leading coefficients.
    """

    __slots__ = ("_scale", "_n", "_d", "_num", "_den")

    def __init__(self, num, den=1):
        num = _coerce_poly(num)
        den = _coerce_poly(den)
        if num is None or den is None:
            raise TypeError("RatFunc expects Poly, int or Fraction arguments")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        n, dn = num._ints()
        d, dd = den._ints()
        # num/den = (n/dn) / (d/dd) = (dd * n) / (dn * d)
        self._set(_iscale(n, dd), _iscale(d, dn))

    @classmethod
    def _raw(cls, n: list[int], d: list[int]) -> RatFunc:
        obj = cls.__new__(cls)
        obj._set(n, d)
        return obj

    def _set(self, n: list[int], d: list[int], reduced: bool = False):
        if not n:
            self._scale, self._n, self._d = Fraction(0), [], [1]
        else:
            if not reduced:
                g = _igcd(n, d)
                if len(g) > 1:
                    n = _iexact_div(n, g)
                    d = _iexact_div(d, g)
            cn = _content(n) * (1 if n[-1] > 0 else -1)
            cd = _content(d) * (1 if d[-1] > 0 else -1)
            self._scale = Fraction(cn, cd)
            self._n = [x // cn for x in n]
            self._d = [x // cd for x in d]
        self._num = None
        self._den = None

    @property
    def num(self) -> Poly:
        if self._num is None:
            lc = self._d[-1]
            self._num = Poly(self._scale * Fraction(c, lc) for c in self._n)
        return self._num

    @property
    def den(self) -> Poly:
        if self._den is None:
            lc = self._d[-1]
            self._den = Poly(Fraction(c, lc) for c in self._d)
        return self._den

    def is_zero(self) -> bool:
        return not self._n

    def constant(self) -> Fraction | None:
        """The constant value if the function is constant, else ``None``."""
        if len(self._d) == 1 and len(self._n) <= 1:
            return self._scale * (self._n[0] if self._n else 0)
        return None

    def _key(self):
        return (self._scale, tuple(self._n), tuple(self._d))

    def __eq__(self, other):
        other = _coerce_ratfunc(other)
        if other is None:
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(("RatFunc",) + self._key())

    def _scaled(self) -> tuple[int, list[int], list[int]]:
        """Integer triple (p, N, q*D) with self = p*N/(q*D)."""
        return self._scale.numerator, self._n, _iscale(self._d, self._scale.denominator)

    def __add__(self, other):
        other = _coerce_ratfunc(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        p1, n1, d1 = self._scaled()
        p2, n2, d2 = other._scaled()
        g = _igcd(d1, d2)
        c1 = _iexact_div(d1, g)
        c2 = _iexact_div(d2, g)
        num = _iadd(_iscale(_imul(n1, c2), p1), _iscale(_imul(n2, c1), p2))
        return RatFunc._raw(num, _imul(_imul(c1, c2), g))

    __radd__ = __add__

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out._scale, out._n, out._d = -self._scale, self._n, self._d
        out._num = out._den = None
        return out

    def __sub__(self, other):
        other = _coerce_ratfunc(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_ratfunc(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc(0)
        g1 = _igcd(self._n, other._d)
        g2 = _igcd(other._n, self._d)
        n = _imul(_iexact_div(self._n, g1), _iexact_div(other._n, g2))
        d = _imul(_iexact_div(self._d, g2), _iexact_div(other._d, g1))
        s = self._scale * other._scale
        out = RatFunc.__new__(RatFunc)
        out._set(_iscale(n, s.numerator), _iscale(d, s.denominator), reduced=True)
        return out

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        s = self._scale
        out = RatFunc.__new__(RatFunc)
        out._set(_iscale(self._d, s.denominator), _iscale(self._n, s.numerator), reduced=True)
        return out

    def __truediv__(self, other):
        other = _coerce_ratfunc(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFunc(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at z = {x}")
        return self.num(x) / d

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        c = self.constant()
        if c is not None:
            return str(c)
        if len(self._d) == 1:
            return f"({self.num})"
        return f"({self.num}) / ({self.den})"


def _coerce_ratfunc(x) -> RatFunc | None:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (Poly, int, Fraction)):
        return RatFunc(x)
    return None


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown rational-function operation {op!r}")


def is_constant(f: RatFunc) -> Fraction | None:
    return f.constant()


# ---------------------------------------------------------------------------
# Laurent expansion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentWindow:
    """Coefficients of orders ``min_order .. min_order + len(coeffs) - 1``.

    ``center`` is 0 (powers of ``z``) or 1 (powers of ``t = z - 1``).
    """

    center: int
    min_order: int
    coeffs: tuple[Fraction, ...]

    def __getitem__(self, order: int) -> Fraction:
        i = order - self.min_order
        if not 0 <= i < len(self.coeffs):
            raise KeyError(order)
        return self.coeffs[i]

    @property
    def orders(self) -> range:
        return range(self.min_order, self.min_order + len(self.coeffs))


def _shift_coeff(coeffs: Sequence[Fraction], j: int) -> Fraction:
    """Coefficient of ``t**j`` in ``p(1 + t)``."""
    return sum((coeffs[i] * math.comb(i, j) for i in range(j, len(coeffs))), Fraction(0))


def _shift_prefix(coeffs: Sequence[Fraction], n: int, start: int = 0) -> list[Fraction]:
    return [_shift_coeff(coeffs, j) for j in range(start, n)]


def expand(f: RatFunc, center: int, min_order: int, count: int) -> LaurentWindow:
    """Exact Laurent coefficients of ``f`` at ``z = 0`` or ``z = 1``.

    Orders below the pole order come back as exact zeros.
    """
    if center not in (0, 1):
        raise ValueError("center must be 0 or 1")
    if count < 1:
        raise ValueError("count must be at least 1")
    num, den = f.num.coeffs, f.den.coeffs
    top = min_order + count - 1
    if not num:
        return LaurentWindow(center, min_order, (Fraction(0),) * count)

    # locate the pole order k: den = x^k * d0(x), d0(0) != 0
    if center == 0:
        k = next(i for i, c in enumerate(den) if c != 0)
        d0 = list(den[k:])
        need = max(top + k + 1, 1)
        n0 = list(num[:need]) + [Fraction(0)] * max(0, need - len(num))
    else:
        k = 0
        while _shift_coeff(den, k) == 0:
            k += 1
        need = max(top + k + 1, 1)
        d0 = _shift_prefix(den, need + k, start=k)
        n0 = _shift_prefix(num, need)

    # power series q = n0 / d0 up to order need - 1
    q: list[Fraction] = []
    lead = d0[0]
    for i in range(need):
        acc = n0[i] if i < len(n0) else Fraction(0)
        for j in range(1, min(i, len(d0) - 1) + 1):
            acc -= d0[j] * q[i - j]
        q.append(acc / lead)

    out = []
    for order in range(min_order, top + 1):
        i = order + k
        out.append(q[i] if 0 <= i < len(q) else Fraction(0))
    return LaurentWindow(center, min_order, tuple(out))
