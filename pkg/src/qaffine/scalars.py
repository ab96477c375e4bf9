"""Exact rational functions in the deformation parameter ``q``.

A :class:`Scalar` is stored as ``q**shift * num(q) / den(q)`` with ``num`` and
``den`` rational polynomials.  The canonical form keeps ``gcd(num, den) == 1``,
``num(0) != 0`` (powers of ``q`` live in ``shift``) and ``den(0) == 1``, so two
scalars are equal exactly when their stored triples are equal.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from flint import fmpq, fmpq_poly

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "Q",
    "as_scalar",
    "bracket_qnum",
    "paren_qnum",
    "paren_qfactorial",
    "a_of",
    "d_of",
    "a_const",
]

_P_ONE = fmpq_poly([1])
_P_ZERO = fmpq_poly([])


def _low_order(p: fmpq_poly) -> int:
    i = 0
    while p[i] == 0:
        i += 1
    return i


class Scalar:
    __slots__ = ("num", "den", "shift", "_hash")

    def __init__(self, num: fmpq_poly, den: fmpq_poly = _P_ONE, shift: int = 0, *, _canonical=False):
        if _canonical:
            self.num, self.den, self.shift = num, den, shift
            self._hash = None
            return
        if num.is_zero():
            self.num, self.den, self.shift = _P_ZERO, _P_ONE, 0
            self._hash = None
            return
        if den.is_zero():
            raise ZeroDivisionError("scalar with zero denominator")
        v = _low_order(num)
        if v:
            num = num.right_shift(v)
            shift += v
        w = _low_order(den)
        if w:
            den = den.right_shift(w)
            shift -= w
        if den.degree() > 0:
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
        c = den[0]
        if c != 1:
            inv = fmpq(1) / c
            num = num * inv
            den = den * inv
        self.num, self.den, self.shift = num, den, shift
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def from_int(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, Fraction):
            value = fmpq(value.numerator, value.denominator)
        return cls(fmpq_poly([value]))

    @classmethod
    def q_power(cls, k: int, coeff=1) -> "Scalar":
        if coeff == 0:
            return ZERO
        if isinstance(coeff, Fraction):
            coeff = fmpq(coeff.numerator, coeff.denominator)
        return cls(fmpq_poly([coeff]), _P_ONE, k, _canonical=True)

    @classmethod
    def laurent(cls, terms) -> "Scalar":
        """Build from ``{exponent: coefficient}`` (or pairs)."""
        items = dict(terms).items() if not isinstance(terms, dict) else terms.items()
        items = [(e, c) for e, c in items if c != 0]
        if not items:
            return ZERO
        low = min(e for e, _ in items)
        coeffs = [0] * (max(e for e, _ in items) - low + 1)
        for e, c in items:
            if isinstance(c, Fraction):
                c = fmpq(c.numerator, c.denominator)
            coeffs[e - low] += c
        return cls(fmpq_poly(coeffs), _P_ONE, low)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.shift == 0 and self.num.is_one() and self.den.is_one()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def is_monomial(self) -> bool:
        """True for ``c * q**k``."""
        return self.den.is_one() and self.num.degree() == 0

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        s1, s2 = self.shift, other.shift
        s = s1 if s1 < s2 else s2
        n1 = self.num.left_shift(s1 - s) if s1 != s else self.num
        n2 = other.num.left_shift(s2 - s) if s2 != s else other.num
        if self.den.is_one() and other.den.is_one():
            n = n1 + n2
            if n.is_zero():
                return ZERO
            if n[0] == 0:
                v = _low_order(n)
                return Scalar(n.right_shift(v), _P_ONE, s + v, _canonical=True)
            return Scalar(n, _P_ONE, s, _canonical=True)
        if self.den == other.den:
            return Scalar(n1 + n2, self.den, s)
        return Scalar(n1 * other.den + n2 * self.den, self.den * other.den, s)

    __radd__ = __add__

    def __neg__(self):
        if self.num.is_zero():
            return self
        return Scalar(-self.num, self.den, self.shift, _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return as_scalar(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                if other == 0:
                    return ZERO
                return Scalar(self.num * other, self.den, self.shift, _canonical=True)
            other = as_scalar(other)
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        d1, d2 = self.den, other.den
        if d1.is_one() and d2.is_one():
            return Scalar(self.num * other.num, _P_ONE, self.shift + other.shift, _canonical=True)
        n1, n2 = self.num, other.num
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 // g, d2 // g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 // g, d1 // g
        num = n1 * n2
        den = d1 * d2
        c = den[0]
        if c != 1:
            inv = fmpq(1) / c
            num = num * inv
            den = den * inv
        return Scalar(num, den, self.shift + other.shift, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self.den, self.num, -self.shift)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.is_monomial():
            return Scalar(self.num ** k, _P_ONE, self.shift * k, _canonical=True)
        return Scalar(self.num ** k, self.den ** k, self.shift * k)

    def bar(self) -> "Scalar":
        """Apply ``q -> q**-1``."""
        if self.num.is_zero():
            return self
        n, d = self.num, self.den
        dn, dd = n.degree(), d.degree()
        rn = fmpq_poly(n.coeffs()[::-1])
        rd = fmpq_poly(d.coeffs()[::-1])
        return Scalar(rn, rd, -self.shift - dn + dd)

    # -- comparison / hashing -------------------------------------------
    def _key(self):
        return (self.shift, tuple(self.num.coeffs()), tuple(self.den.coeffs()))

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self.shift == other.shift and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    # -- conversion -------------------------------------------------------
    def laurent_terms(self, part: str = "num") -> list[tuple[int, Fraction]]:
        poly = self.num if part == "num" else self.den
        base = self.shift if part == "num" else 0
        out = []
        for i, c in enumerate(poly.coeffs()):
            if c != 0:
                out.append((base + i, Fraction(int(c.p), int(c.q))))
        return out

    def evaluate(self, value) -> Fraction:
        """Substitute an exact rational for ``q``."""
        value = Fraction(value)
        num = sum((c * value ** e for e, c in self.laurent_terms("num")), Fraction(0))
        den = sum((c * value ** e for e, c in self.laurent_terms("den")), Fraction(0))
        if den == 0:
            raise ZeroDivisionError(f"scalar has a pole at q = {value}")
        return num / den

    def to_json(self) -> dict:
        return {
            "num": [[e, str(c)] for e, c in self.laurent_terms("num")],
            "den": [[e, str(c)] for e, c in self.laurent_terms("den")],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Scalar":
        num = cls.laurent({int(e): Fraction(c) for e, c in data["num"]})
        den = cls.laurent({int(e): Fraction(c) for e, c in data["den"]})
        return num / den

    def __str__(self):
        num = _format_laurent(self.laurent_terms("num"))
        if self.den.is_one():
            return num
        den = _format_laurent(self.laurent_terms("den"))
        if len(self.laurent_terms("num")) > 1:
            num = f"({num})"
        return f"{num}/({den})"

    def __repr__(self):
        return f"Scalar({self})"


def _format_laurent(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for e, c in sorted(terms, key=lambda t: -t[0]):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if e == 0:
            body = str(c)
        else:
            qpart = "q" if e == 1 else f"q^{e}"
            body = qpart if c == 1 else f"{c}*{qpart}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def as_scalar(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction, fmpq)):
        return Scalar.from_int(value)
    raise TypeError(f"cannot interpret {value!r} as a scalar")


ZERO = Scalar(_P_ZERO, _P_ONE, 0, _canonical=True)
ONE = Scalar(_P_ONE, _P_ONE, 0, _canonical=True)
Q = Scalar(_P_ONE, _P_ONE, 1, _canonical=True)
QQ_DIFF = Scalar.laurent({1: 1, -1: -1})  # q - q^-1


@lru_cache(maxsize=None)
def bracket_qnum(n: int) -> Scalar:
    """Symmetric q-number ``(q**n - q**-n) / (q - q**-1)``."""
    if n == 0:
        return ZERO
    if n < 0:
        return -bracket_qnum(-n)
    return Scalar.laurent({n - 1 - 2 * j: 1 for j in range(n)})


@lru_cache(maxsize=None)
def paren_qnum(n: int, base: Scalar = Q) -> Scalar:
    """``(n)_p = (p**n - 1) / (p - 1)`` for the base ``p`` (default ``q``)."""
    if n < 0:
        raise ValueError(f"paren_qnum needs n >= 0, got {n}")
    total = ZERO
    power = ONE
    for _ in range(n):
        total = total + power
        power = power * base
    return total


@lru_cache(maxsize=None)
def paren_qfactorial(n: int, base: Scalar = Q) -> Scalar:
    out = ONE
    for j in range(1, n + 1):
        out = out * paren_qnum(j, base)
    return out


@lru_cache(maxsize=None)
def a_of(m: int, pairing: int = 2) -> Scalar:
    """``(q**(m*p) - q**(-m*p)) / (m (q - q**-1))`` with ``p`` the root pairing."""
    if m <= 0:
        raise ValueError(f"a_of needs m >= 1, got {m}")
    return bracket_qnum(m * pairing) * Scalar.from_int(Fraction(1, m))


@lru_cache(maxsize=None)
def d_of(n: int, pairing: int = 2) -> Scalar:
    if n <= 0:
        raise ValueError(f"d_of needs n >= 1, got {n}")
    return a_of(n, pairing).inverse()


def a_const(pairing: int = 2) -> Scalar:
    """The prefactor used by the real root vector recursion."""
    return bracket_qnum(pairing)


def factorial_scalar(n: int) -> Scalar:
    return Scalar.from_int(factorial(n))
