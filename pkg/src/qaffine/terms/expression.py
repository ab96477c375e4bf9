"""Generators, monomials and linear combinations of monomials.

An :class:`Expression` is a finite sum ``sum c_m * m`` over monomials ``m``
(tuples of generators) with :class:`~qaffine.scalars.Scalar` coefficients.  It
records the algebra kind and a basis tag saying which normal form, if any, the
monomials are in.  Products of expressions only concatenate monomials and
merge adjacent Cartan factors; rewriting happens in the normal-form engines.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple, Union

from ..roots import AlgebraKind, Root, form, root_label
from ..scalars import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "RootVector",
    "Cartan",
    "Generator",
    "Monomial",
    "Expression",
    "ExpressionError",
    "CHEVALLEY_ROOTS",
    "gen_parity",
    "gen_weight",
    "gen_key",
    "monomial_weight",
    "monomial_parity",
    "monomial_degree",
    "cartan_of_root",
    "cartan_power_shift",
    "is_chevalley_generator",
]

BASIS_TAGS = ("free", "chevalley", "pbw")


class ExpressionError(ValueError):
    pass


class RootVector(NamedTuple):
    """Root vector for the root ``n*delta + k*alpha``.

    ``family`` is ``"direct"`` or ``"inverse"`` (the two normal orderings);
    ``primed`` marks the imaginary vectors built directly as q-brackets.
    """

    n: int
    k: int
    family: str = "direct"
    primed: bool = False

    @property
    def root(self) -> Root:
        return Root(self.n, self.k)


class Cartan(NamedTuple):
    """``k_d**d * k_alpha**a * k_(delta-alpha)**b``."""

    d: int
    a: int
    b: int

    def __mul__(self, other):
        return Cartan(self.d + other.d, self.a + other.a, self.b + other.b)

    def inverse(self):
        return Cartan(-self.d, -self.a, -self.b)

    def is_identity(self) -> bool:
        return self.d == 0 and self.a == 0 and self.b == 0


Generator = Union[RootVector, Cartan]
Monomial = tuple

CHEVALLEY_ROOTS = (Root(0, 1), Root(1, -1), Root(0, -1), Root(-1, 1))
IDENTITY = Cartan(0, 0, 0)


def is_chevalley_generator(g) -> bool:
    return isinstance(g, Cartan) or (g.root in CHEVALLEY_ROOTS and not g.primed)


def cartan_of_root(gamma, power: int = 1) -> Cartan:
    """``k_gamma**power`` for ``gamma = n*delta + k*alpha``."""
    n, k = gamma
    return Cartan(0, power * (k + n), power * n)


def cartan_power_shift(c: Cartan, weight) -> int:
    """Exponent ``e`` with ``c * x * c**-1 = q**e * x`` for ``x`` of the given weight."""
    n, k = weight
    return c.d * n + 2 * k * (c.a - c.b)


def gen_weight(g) -> tuple[int, int]:
    if isinstance(g, Cartan):
        return (0, 0)
    return (g.n, g.k)


def gen_parity(kind: AlgebraKind, g) -> int:
    if isinstance(g, Cartan):
        return 0
    return (kind.theta * g.k) % 2


def gen_key(g):
    if isinstance(g, Cartan):
        return (1, g.d, g.a, g.b, "", False)
    return (0, g.n, g.k, 0, g.family, g.primed)


def monomial_weight(m) -> tuple[int, int]:
    n = k = 0
    for g in m:
        if not isinstance(g, Cartan):
            n += g.n
            k += g.k
    return (n, k)


def monomial_parity(kind: AlgebraKind, m) -> int:
    if not kind.theta:
        return 0
    return sum(g.k for g in m if not isinstance(g, Cartan)) % 2


def monomial_degree(m) -> int:
    """Number of Chevalley letters a monomial expands to (absolute heights)."""
    total = 0
    for g in m:
        if isinstance(g, Cartan):
            continue
        total += abs(2 * g.n + g.k)
    return total


def _monomial_key(m):
    return (len(m), tuple(gen_key(g) for g in m))


def concat(m1, m2):
    """Concatenate monomials, merging a Cartan block at the seam."""
    if not m1:
        return m2
    if not m2:
        return m1
    a, b = m1[-1], m2[0]
    if isinstance(a, Cartan) and isinstance(b, Cartan):
        c = a * b
        middle = () if c.is_identity() else (c,)
        return m1[:-1] + middle + m2[1:]
    return m1 + m2


def _is_clean(m: tuple) -> bool:
    prev_cartan = False
    for g in m:
        is_cartan = isinstance(g, Cartan)
        if is_cartan and (prev_cartan or g.is_identity()):
            return False
        prev_cartan = is_cartan
    return True


def clean_monomial(m) -> tuple:
    out: tuple = ()
    for g in m:
        if isinstance(g, Cartan) and g.is_identity():
            continue
        out = concat(out, (g,))
    return out


class Expression:
    __slots__ = ("kind", "terms", "basis")

    def __init__(self, kind: AlgebraKind, terms=None, basis: str = "free"):
        if basis not in BASIS_TAGS:
            raise ExpressionError(f"unknown basis tag {basis!r}")
        self.kind = kind
        self.basis = basis
        self.terms: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for m, c in items:
                c = as_scalar(c)
                if c.is_zero():
                    continue
                m = tuple(m)
                if not _is_clean(m):
                    m = clean_monomial(m)
                old = self.terms.get(m)
                if old is None:
                    self.terms[m] = c
                else:
                    s = old + c
                    if s.is_zero():
                        del self.terms[m]
                    else:
                        self.terms[m] = s

    # -- constructors ----------------------------------------------------
    @classmethod
    def scalar(cls, kind: AlgebraKind, c=1, basis: str = "free") -> "Expression":
        return cls(kind, {(): as_scalar(c)}, basis)

    @classmethod
    def generator(cls, kind: AlgebraKind, g, basis: str = "free") -> "Expression":
        if isinstance(g, Cartan) and g.is_identity():
            return cls.scalar(kind, 1, basis)
        return cls(kind, {(g,): ONE}, basis)

    @classmethod
    def zero(cls, kind: AlgebraKind, basis: str = "free") -> "Expression":
        return cls(kind, None, basis)

    def with_basis(self, basis: str) -> "Expression":
        out = Expression(self.kind, None, basis)
        out.terms = dict(self.terms)
        return out

    # -- queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        """Terms sorted by a deterministic monomial key."""
        return sorted(self.terms.items(), key=lambda t: _monomial_key(t[0]))

    def weights(self) -> set:
        return {monomial_weight(m) for m in self.terms}

    def weight(self) -> tuple[int, int]:
        ws = self.weights()
        if len(ws) > 1:
            raise ExpressionError(f"expression is not weight-homogeneous: {sorted(ws)}")
        return ws.pop() if ws else (0, 0)

    def parity(self) -> int:
        ps = {monomial_parity(self.kind, m) for m in self.terms}
        if len(ps) > 1:
            raise ExpressionError("expression has mixed parity")
        return ps.pop() if ps else 0

    def degree(self) -> int:
        return max((monomial_degree(m) for m in self.terms), default=0)

    def scalar_part(self) -> Scalar:
        return self.terms.get((), ZERO)

    def generators(self) -> set:
        return {g for m in self.terms for g in m}

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Expression":
        if isinstance(other, Expression):
            if other.kind != self.kind:
                raise ExpressionError(f"cannot combine {self.kind.key} with {other.kind.key}")
            return other
        return Expression.scalar(self.kind, as_scalar(other), self.basis)

    def _join_basis(self, other: "Expression") -> str:
        if self.basis == other.basis:
            return self.basis
        if not other.terms or set(other.terms) == {()}:
            return self.basis
        if not self.terms or set(self.terms) == {()}:
            return other.basis
        return "free"

    def __add__(self, other):
        other = self._coerce(other)
        out = Expression(self.kind, None, self._join_basis(other))
        t = dict(self.terms)
        for m, c in other.terms.items():
            old = t.get(m)
            if old is None:
                t[m] = c
            else:
                s = old + c
                if s.is_zero():
                    del t[m]
                else:
                    t[m] = s
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Expression(self.kind, None, self.basis)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def scale(self, c) -> "Expression":
        c = as_scalar(c)
        out = Expression(self.kind, None, self.basis)
        if c.is_zero():
            return out
        out.terms = {m: v * c for m, v in self.terms.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, Expression):
            return self.scale(other)
        other = self._coerce(other)
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = concat(m1, m2)
                v = c1 * c2
                old = acc.get(m)
                acc[m] = v if old is None else old + v
        out = Expression(self.kind, None, self._join_basis(other) if self.basis == other.basis else "free")
        out.terms = {m: c for m, c in acc.items() if not c.is_zero()}
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(as_scalar(1) / as_scalar(other))

    def __pow__(self, n: int):
        if n < 0:
            raise ExpressionError("negative powers are only defined for Cartan generators")
        out = Expression.scalar(self.kind, 1, self.basis)
        for _ in range(n):
            out = out * self
        return out

    def map_coefficients(self, f) -> "Expression":
        out = Expression(self.kind, None, self.basis)
        out.terms = {m: f(c) for m, c in self.terms.items() if not f(c).is_zero()}
        return out

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Expression):
            return self.kind == other.kind and self.terms == other.terms
        try:
            return self.terms == self._coerce(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.kind, frozenset(self.terms.items())))

    # -- conversion ------------------------------------------------------
    def __str__(self):
        from .printer import format_expression

        return format_expression(self)

    def __repr__(self):
        return f"Expression({self.kind.name}, {self})"

    def to_json(self) -> dict:
        from .printer import format_monomial_parts

        return {
            "format": 1,
            "kind": self.kind.name,
            "theta": self.kind.theta,
            "basis": self.basis,
            "terms": [[format_monomial_parts(m), c.to_json()] for m, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Expression":
        from ..roots import kind_from_name
        from .parser import parse_generator_token

        kind = kind_from_name(data["kind"])
        if "theta" in data and data["theta"] != kind.theta:
            kind = AlgebraKind(kind.name, int(data["theta"]))
        terms = []
        for parts, c in data["terms"]:
            m: tuple = ()
            for token in parts:
                g, power = parse_generator_token(token)
                for _ in range(abs(power) if not isinstance(g, Cartan) else 1):
                    m = concat(m, ((Cartan(g.d * power, g.a * power, g.b * power),) if isinstance(g, Cartan) else (g,)))
            terms.append((m, Scalar.from_json(c)))
        return cls(kind, terms, data.get("basis", "free"))


def q_bracket_factor(kind: AlgebraKind, w1, p1: int, w2, p2: int, inverse: bool = False) -> Scalar:
    """``(-1)**(p1 p2) * q**(+-(w1, w2))`` for the q-super-commutator."""
    e = int(form(w1, w2))
    return Scalar.q_power(-e if inverse else e, -1 if (p1 and p2) else 1)


def _homogeneous(x: Expression):
    return x.weight(), x.parity()


def commutator(x: Expression, y: Expression, q_twisted: bool = False, inverse: bool = False) -> Expression:
    """Super-commutator ``[x, y]``; with ``q_twisted`` the q-super-commutator.

    ``inverse`` selects the ``q**-1`` twist.  Both arguments must be homogeneous.
    """
    if x.kind != y.kind:
        raise ExpressionError("commutator of expressions of different kinds")
    if x.is_zero() or y.is_zero():
        return Expression.zero(x.kind)
    wx, px = _homogeneous(x)
    wy, py = _homogeneous(y)
    if q_twisted:
        c = q_bracket_factor(x.kind, wx, px, wy, py, inverse)
    else:
        c = as_scalar(-1 if (px and py) else 1)
    return x * y - (y * x).scale(c)


def weight(x: Expression) -> tuple[int, int]:
    return x.weight()


def generator_expr(kind: AlgebraKind, gamma, family: str = "direct", primed: bool = False, power: int = 1) -> Expression:
    g = RootVector(gamma[0], gamma[1], family, primed)
    return Expression.generator(kind, g) ** power


def monomial_label(m: Iterable) -> str:
    from .printer import format_monomial

    return format_monomial(tuple(m))


def root_vector_label(g: RootVector) -> str:
    return root_label((g.n, g.k))
