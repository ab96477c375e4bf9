"""Coproduct, antipode and counit on Chevalley generators, and graded tensor arithmetic.

Tensors carry an arbitrary number of legs.  The product of homogeneous
tensors picks up the super interchange sign: for two legs
``(a (x) b)(c (x) d) = (-1)**(|b||c|) ac (x) bd``, and in general each leg of
the left factor is moved past every earlier leg of the right factor.

A tensor may carry a formal ``K`` on its right (``k_factor == 1``).  ``K`` is
never expanded; it is moved through other tensors with the conjugation rule

    K (a (x) b) K**-1 = a k_{wt b} (x) k_{wt a} b,

valid for root-lattice weights.
"""
from __future__ import annotations

import json
from typing import Callable

from .roots import AlgebraKind
from .scalars import ONE, Scalar, as_scalar
from .terms.expression import (
    Cartan,
    Expression,
    ExpressionError,
    RootVector,
    cartan_of_root,
    clean_monomial,
    concat,
    gen_parity,
    is_chevalley_generator,
    monomial_parity,
    monomial_weight,
)

__all__ = [
    "TensorExpression",
    "coproduct",
    "opposite_coproduct",
    "antipode",
    "counit",
    "multiply_legs",
    "apply_to_leg",
    "conjugate_by_k",
]


def _add(acc: dict, key, c: Scalar) -> None:
    old = acc.get(key)
    s = c if old is None else old + c
    if s.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = s


class TensorExpression:
    """Finite sum of ``c * (m_1 (x) ... (x) m_r) * K**k_factor``."""

    __slots__ = ("kind", "legs", "terms", "k_factor")

    def __init__(self, kind: AlgebraKind, legs: int = 2, terms=None, k_factor: int = 0):
        if k_factor not in (0, 1):
            raise ExpressionError("k_factor must be 0 or 1")
        if k_factor and legs != 2:
            raise ExpressionError("the formal K lives in the tensor square")
        self.kind = kind
        self.legs = legs
        self.k_factor = k_factor
        acc: dict = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for key, c in items:
            key = tuple(clean_monomial(m) for m in key)
            if len(key) != legs:
                raise ExpressionError(f"expected {legs} legs, got {len(key)}")
            _add(acc, key, as_scalar(c))
        self.terms = acc

    # construction

    @classmethod
    def one(cls, kind: AlgebraKind, legs: int = 2) -> "TensorExpression":
        return cls(kind, legs, {((),) * legs: ONE})

    @classmethod
    def zero(cls, kind: AlgebraKind, legs: int = 2) -> "TensorExpression":
        return cls(kind, legs)

    @classmethod
    def pure(cls, *factors: Expression) -> "TensorExpression":
        """``x_1 (x) x_2 (x) ...`` for plain expressions."""
        kind = factors[0].kind
        out: dict = {(): ONE}
        for x in factors:
            nxt: dict = {}
            for key, c in out.items():
                for m, cm in x.terms.items():
                    _add(nxt, key + (m,), c * cm)
            out = nxt
        return cls(kind, len(factors), out)

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def leg_weights(self, key) -> tuple:
        return tuple(monomial_weight(m) for m in key)

    def leg(self, key, i: int) -> tuple:
        return key[i]

    # arithmetic

    def _check(self, other: "TensorExpression") -> None:
        if other.kind != self.kind or other.legs != self.legs:
            raise ExpressionError("tensor operands differ in kind or number of legs")

    def __add__(self, other: "TensorExpression") -> "TensorExpression":
        self._check(other)
        if self.k_factor != other.k_factor:
            raise ExpressionError("cannot add tensors with and without the formal K")
        out = dict(self.terms)
        for key, c in other.terms.items():
            _add(out, key, c)
        return TensorExpression(self.kind, self.legs, out, self.k_factor)

    def __neg__(self) -> "TensorExpression":
        return self.scale(-ONE)

    def __sub__(self, other: "TensorExpression") -> "TensorExpression":
        return self + (-other)

    def scale(self, c) -> "TensorExpression":
        c = as_scalar(c)
        return TensorExpression(self.kind, self.legs, {k: v * c for k, v in self.terms.items()}, self.k_factor)

    def with_k(self, k_factor: int) -> "TensorExpression":
        return TensorExpression(self.kind, self.legs, self.terms, k_factor)

    def __mul__(self, other):
        if not isinstance(other, TensorExpression):
            return self.scale(other)
        self._check(other)
        right = conjugate_by_k(other) if self.k_factor else other
        k = self.k_factor + other.k_factor
        if k > 1:
            raise ExpressionError("K**2 is outside the supported extension")
        kind = self.kind
        out: dict = {}
        parities = {}
        for key2, c2 in right.terms.items():
            parities[key2] = [monomial_parity(kind, m) for m in key2]
        for key1, c1 in self.terms.items():
            p1 = [monomial_parity(kind, m) for m in key1]
            for key2, c2 in right.terms.items():
                p2 = parities[key2]
                # leg i of the left factor passes legs j < i of the right factor
                sign = 0
                for i in range(1, self.legs):
                    if p1[i]:
                        sign += sum(p2[:i])
                c = c1 * c2
                if sign % 2:
                    c = -c
                _add(out, tuple(concat(a, b) for a, b in zip(key1, key2)), c)
        return TensorExpression(kind, self.legs, out, k)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "TensorExpression":
        if n < 0:
            raise ValueError("negative tensor power")
        out = TensorExpression.one(self.kind, self.legs)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorExpression):
            return NotImplemented
        return (self.kind, self.legs, self.k_factor, self.terms) == (
            other.kind, other.legs, other.k_factor, other.terms)

    def __hash__(self):
        return hash((self.kind, self.legs, self.k_factor, frozenset(self.terms.items())))

    # transformations

    def filter(self, keep: Callable) -> "TensorExpression":
        return TensorExpression(self.kind, self.legs,
                                {k: c for k, c in self.terms.items() if keep(k)}, self.k_factor)

    def map_legs(self, f: Callable[[tuple], Expression], legs=None) -> "TensorExpression":
        """Apply a linear map ``monomial -> Expression`` to the chosen legs (default all)."""
        chosen = range(self.legs) if legs is None else legs
        cache: dict = {}

        def image(m):
            hit = cache.get(m)
            if hit is None:
                hit = cache[m] = f(Expression(self.kind, [(m, ONE)]))
            return hit

        out: dict = {}
        for key, c in self.terms.items():
            partial = {(): c}
            for i, m in enumerate(key):
                options = image(m).terms.items() if i in chosen else ((m, ONE),)
                nxt: dict = {}
                for pre, cp in partial.items():
                    for mm, cm in options:
                        _add(nxt, pre + (mm,), cp * cm)
                partial = nxt
            for k, v in partial.items():
                _add(out, k, v)
        return TensorExpression(self.kind, self.legs, out, self.k_factor)

    def normalize(self, method: str = "pbw", bound: int = 8) -> "TensorExpression":
        """Leg-wise normal form: ``"pbw"`` or ``"oracle"`` (Chevalley input only)."""
        if method == "pbw":
            from .terms.pbw import normalize_pbw

            return self.map_legs(normalize_pbw)
        if method == "oracle":
            from .terms.oracle import normalize_chevalley

            return self.map_legs(lambda x: normalize_chevalley(x, bound))
        raise ValueError(f"unknown normalization {method!r}")

    def flip(self) -> "TensorExpression":
        """Graded flip ``a (x) b -> (-1)**(|a||b|) b (x) a``."""
        if self.legs != 2 or self.k_factor:
            raise ExpressionError("flip needs a K-free tensor square")
        out: dict = {}
        for (a, b), c in self.terms.items():
            if monomial_parity(self.kind, a) and monomial_parity(self.kind, b):
                c = -c
            _add(out, (b, a), c)
        return TensorExpression(self.kind, 2, out)

    def to_json(self) -> dict:
        from .terms.printer import format_monomial_parts

        rows = [[[format_monomial_parts(m) for m in key], c.to_json()] for key, c in self.terms.items()]
        rows.sort(key=lambda r: json.dumps(r, sort_keys=True))
        return {"format": 1, "kind": self.kind.name, "theta": self.kind.theta, "legs": self.legs,
                "k_factor": self.k_factor, "terms": rows}

    def __str__(self):
        if not self.terms:
            return "0"
        from .terms.printer import _format_coefficient, format_monomial

        pieces = []
        for key in sorted(self.terms, key=repr):
            sign, coef = _format_coefficient(self.terms[key])
            legs = " (x) ".join(format_monomial(m) for m in key)
            pieces.append((sign, f"{coef}*({legs})" if coef else f"({legs})"))
        text = " ".join(f"{s} {body}" for s, body in pieces)
        text = text[2:] if text.startswith("+ ") else "-" + text[2:]
        return f"[{text}]*K" if self.k_factor else text

    __repr__ = __str__


# -- K conjugation -------------------------------------------------------------

def conjugate_by_k(t: TensorExpression) -> TensorExpression:
    """``K t K**-1`` for a K-free tensor square."""
    if t.legs != 2:
        raise ExpressionError("K acts on the tensor square")
    out: dict = {}
    for (a, b), c in t.terms.items():
        wa, wb = monomial_weight(a), monomial_weight(b)
        left = concat(a, (cartan_of_root(wb),))
        right = concat((cartan_of_root(wa),), b)
        _add(out, (left, right), c)
    return TensorExpression(t.kind, 2, out, t.k_factor)


# -- Hopf structure ---------------------------------------------------------------

def _require_chevalley(g) -> None:
    if not is_chevalley_generator(g):
        raise ExpressionError(
            f"Hopf maps are defined on Chevalley generators; expand {g} to the Chevalley basis first")


def _generator_coproduct(kind: AlgebraKind, g) -> TensorExpression:
    _require_chevalley(g)
    if isinstance(g, Cartan):
        return TensorExpression(kind, 2, {((g,), (g,)): ONE})
    x = (g,)
    if g.n > 0 or (g.n == 0 and g.k > 0):
        kinv = cartan_of_root(g.root, -1)
        return TensorExpression(kind, 2, {(x, ()): ONE, ((kinv,), x): ONE})
    kpos = cartan_of_root((-g.n, -g.k))
    return TensorExpression(kind, 2, {(x, (kpos,)): ONE, ((), x): ONE})


def _monomial_image(kind: AlgebraKind, m: tuple, legs: int, image) -> TensorExpression:
    out = TensorExpression.one(kind, legs)
    for g in m:
        out = out * image(g)
    return out


def coproduct(x: Expression) -> TensorExpression:
    """Algebra map into the graded tensor square."""
    kind = x.kind
    memo: dict = {}

    def image(g):
        hit = memo.get(g)
        if hit is None:
            hit = memo[g] = _generator_coproduct(kind, g)
        return hit

    out = TensorExpression.zero(kind)
    for m, c in x.terms.items():
        out = out + _monomial_image(kind, m, 2, image).scale(c)
    return out


def opposite_coproduct(x: Expression) -> TensorExpression:
    return coproduct(x).flip()


def _generator_antipode(kind: AlgebraKind, g) -> Expression:
    _require_chevalley(g)
    if isinstance(g, Cartan):
        return Expression.generator(kind, g.inverse())
    e = Expression.generator(kind, g)
    if g.n > 0 or (g.n == 0 and g.k > 0):
        return -(Expression.generator(kind, cartan_of_root(g.root)) * e)
    return -(e * Expression.generator(kind, cartan_of_root((-g.n, -g.k), -1)))


def antipode(x: Expression) -> Expression:
    """Graded antiautomorphism: ``S(xy) = (-1)**(|x||y|) S(y) S(x)``."""
    kind = x.kind
    out = Expression.zero(kind)
    for m, c in x.terms.items():
        term = Expression.scalar(kind, c)
        odd = 0
        sign = 0
        for g in m:
            p = gen_parity(kind, g)
            sign += p * odd
            odd += p
        for g in reversed(m):
            term = term * _generator_antipode(kind, g)
        out = out + (term if sign % 2 == 0 else -term)
    return out


def counit(x: Expression) -> Scalar:
    """Augmentation: ``k -> 1``, ``e -> 0``."""
    total = Scalar.from_int(0)
    for m, c in x.terms.items():
        if all(isinstance(g, Cartan) for g in m):
            total = total + c
        else:
            for g in m:
                _require_chevalley(g)
    return total


def multiply_legs(t: TensorExpression) -> Expression:
    """``a (x) b -> ab`` (legs concatenated in order)."""
    if t.k_factor:
        raise ExpressionError("cannot multiply out the formal K")
    out: dict = {}
    for key, c in t.terms.items():
        m: tuple = ()
        for leg in key:
            m = concat(m, leg)
        _add(out, m, c)
    return Expression(t.kind, out)


def apply_to_leg(t: TensorExpression, i: int, f: Callable[[Expression], TensorExpression]) -> TensorExpression:
    """Replace leg ``i`` by the tensor ``f(leg)``; used for ``(D (x) id) D`` and friends.

    ``f`` must be even, so no sign arises.
    """
    out = None
    for key, c in t.terms.items():
        img = f(Expression(t.kind, [(key[i], ONE)]))
        rows: dict = {}
        for sub, cs in img.terms.items():
            _add(rows, key[:i] + sub + key[i + 1:], c * cs)
        piece = TensorExpression(t.kind, t.legs + img.legs - 1, rows)
        out = piece if out is None else out + piece
    if out is None:
        return TensorExpression.zero(t.kind, t.legs + 1)
    return out


def chevalley_generators(kind: AlgebraKind) -> list[Expression]:
    """``e_{+-alpha}``, ``e_{+-(delta-alpha)}``, ``k_alpha``, ``k_(delta-alpha)``, ``k_d`` and inverses."""
    gens = [RootVector(0, 1), RootVector(0, -1), RootVector(1, -1), RootVector(-1, 1)]
    carts = [Cartan(0, 1, 0), Cartan(0, 0, 1), Cartan(1, 0, 0)]
    carts += [c.inverse() for c in carts]
    return [Expression.generator(kind, g) for g in gens + carts]
