"""Cartan-Weyl root vectors, the imaginary-vector change of basis, and the
four (anti)involutions.

Root vectors are built recursively from the Chevalley generators with
q-brackets.  The construction is written once against a small algebra
interface so the same recursion can produce free Chevalley expansions or
reduced normal forms.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct
from math import factorial

from .roots import AlgebraKind, Root, RootError, form, is_root
from .scalars import ONE, QQ_DIFF, Scalar, a_const, as_scalar
from .terms.expression import (
    CHEVALLEY_ROOTS,
    Cartan,
    Expression,
    ExpressionError,
    RootVector,
    concat,
    gen_parity,
    monomial_parity,
)

__all__ = [
    "root_vector",
    "oracle_expansion",
    "expand_to_chevalley",
    "root_vector_normal_form",
    "schur_transform",
    "schur_coefficient",
    "partitions_by_part",
    "involution",
    "negative_imaginary",
    "tau_generator",
    "INVOLUTIONS",
]

INVOLUTIONS = ("star", "ddagger", "omega", "tau")


# -- the recursion --------------------------------------------------------

class _Ops:
    """Arithmetic used by the root-vector recursion."""

    def __init__(self, kind: AlgebraKind):
        self.kind = kind

    def letter(self, root):  # pragma: no cover - interface
        raise NotImplementedError

    def mul(self, x, y):  # pragma: no cover - interface
        raise NotImplementedError

    def lin(self, x, cx, y, cy):  # pragma: no cover - interface
        raise NotImplementedError

    def scale(self, x, c):  # pragma: no cover - interface
        raise NotImplementedError


class _FreeOps(_Ops):
    def letter(self, root):
        return Expression.generator(self.kind, RootVector(root[0], root[1]))

    def mul(self, x, y):
        return x * y

    def lin(self, x, cx, y, cy):
        return x.scale(cx) + y.scale(cy)

    def scale(self, x, c):
        return x.scale(c)


class _OracleOps(_Ops):
    def __init__(self, kind: AlgebraKind, bound: int):
        from .terms.oracle import oracle_for

        super().__init__(kind)
        self.alg = oracle_for(kind, bound)

    def letter(self, root):
        return self.alg.letter(RootVector(root[0], root[1]))

    def mul(self, x, y):
        return self.alg.multiply(x, y)

    def lin(self, x, cx, y, cy):
        return self.alg.add(self.alg.scale(x, cx), y, cy)

    def scale(self, x, c):
        return self.alg.scale(x, c)


def _theta(kind: AlgebraKind, root) -> int:
    return (kind.theta * root[1]) % 2


class _Builder:
    def __init__(self, ops: _Ops):
        self.ops = ops
        self.kind = ops.kind
        self.memo: dict = {}
        self.inv_a = a_const().inverse()

    def bracket(self, x, wx, y, wy, twist: int = 0):
        """``x y - (-1)^(p p') q^(twist*(wx, wy)) y x``; twist 0 is the plain super-commutator."""
        sign = -1 if (_theta(self.kind, wx) and _theta(self.kind, wy)) else 1
        c = Scalar.q_power(twist * int(form(wx, wy)), -sign)
        return self.ops.lin(self.ops.mul(x, y), ONE, self.ops.mul(y, x), c)

    def scaled(self, x, c):
        return self.ops.scale(x, c)

    def get(self, gamma, family: str = "direct", primed: bool = False):
        gamma = Root(*gamma)
        if gamma in CHEVALLEY_ROOTS and not primed:
            family = "direct"
        key = (gamma, family, primed)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = self._build(gamma, family, primed)
        return hit

    def _build(self, gamma: Root, family: str, primed: bool):
        n, k = gamma
        if gamma in CHEVALLEY_ROOTS and not primed:
            return self.ops.letter(gamma)
        if k == 0 and not primed:
            return self._new_imaginary(n, family)
        if family == "direct":
            return self._direct(n, k, primed)
        return self._inverse(n, k, primed)

    def _direct(self, n: int, k: int, primed: bool):
        g = self.get
        if primed:
            if n > 0:
                return self.bracket(g((0, 1)), (0, 1), g((n, -1)), (n, -1), 1)
            m = -n
            return self.bracket(g((-m, 1)), (-m, 1), g((0, -1)), (0, -1), -1)
        if (n, k) == (1, 0) or (n, k) == (-1, 0):
            raise AssertionError("unreachable")
        if k == 1 and n > 0:
            return self.scaled(self.bracket(g((n - 1, 1)), (n - 1, 1), self._delta(1), (1, 0)), self.inv_a)
        if k == -1 and n > 1:
            return self.scaled(self.bracket(self._delta(1), (1, 0), g((n - 1, -1)), (n - 1, -1)), self.inv_a)
        if k == -1 and n < 0:
            m = -n  # e_{-m delta - alpha}
            return self.scaled(self.bracket(self._delta(-1), (-1, 0), g((-(m - 1), -1)), (-(m - 1), -1)), self.inv_a)
        if k == 1 and n < -1:
            m = -n - 1  # e_{-(m+1) delta + alpha}
            return self.scaled(self.bracket(g((-m, 1)), (-m, 1), self._delta(-1), (-1, 0)), self.inv_a)
        raise RootError(f"no direct root vector for {(n, k)}")

    def _inverse(self, n: int, k: int, primed: bool):
        g = self.get
        if primed:
            if n > 0:
                return self.bracket(g((1, -1)), (1, -1), g((n - 1, 1), "inverse"), (n - 1, 1), 1)
            m = -n  # conjugate of the positive bracket, so the new letter goes last
            return self.bracket(g((-(m - 1), -1), "inverse"), (-(m - 1), -1), g((-1, 1)), (-1, 1), -1)
        if k == -1 and n > 1:
            return self.scaled(
                self.bracket(g((n - 1, -1), "inverse"), (n - 1, -1), self._delta(1, "inverse"), (1, 0)), self.inv_a
            )
        if k == 1 and n > 0:
            return self.scaled(
                self.bracket(self._delta(1, "inverse"), (1, 0), g((n - 1, 1), "inverse"), (n - 1, 1)), self.inv_a
            )
        if k == 1 and n < -1:
            m = -n - 1  # e~_{-(m+1) delta + alpha}
            return self.scaled(
                self.bracket(self._delta(-1, "inverse"), (-1, 0), g((-m, 1), "inverse"), (-m, 1)), self.inv_a
            )
        if k == -1 and n < 0:
            m = -n  # e~_{-m delta - alpha}
            return self.scaled(
                self.bracket(g((-(m - 1), -1), "inverse"), (-(m - 1), -1), self._delta(-1, "inverse"), (-1, 0)),
                self.inv_a,
            )
        raise RootError(f"no inverse root vector for {(n, k)}")

    def _delta(self, sign: int, family: str = "direct"):
        """The first imaginary bracket ``e_{+-delta}`` (equal to the primed one)."""
        return self.get((sign, 0), family, True)

    def _new_imaginary(self, n: int, family: str):
        if n < 0:
            return self._star_of(self.get((-n, 0), family))
        total = None
        for parts in partitions_by_part(n):
            c = schur_coefficient(self.kind, parts, "new_from_prime")
            term = None
            for j, p in enumerate(parts, start=1):
                for _ in range(p):
                    f = self.get((j, 0), family, True)
                    term = f if term is None else self.ops.mul(term, f)
            total = self.scaled(term, c) if total is None else self.ops.lin(total, ONE, term, c)
        return total

    def _star_of(self, x):
        if isinstance(self.ops, _FreeOps):
            return involution(self.kind, "star", x)
        expr = self.ops.alg.to_expression(x)
        return self.ops.alg.from_expression(involution(self.kind, "star", expr))


# -- Schur change of basis --------------------------------------------------

@lru_cache(maxsize=None)
def partitions_by_part(n: int) -> tuple:
    """All ``(p_1, ..., p_n)`` with ``sum_i i * p_i == n``."""
    out = []

    def rec(i, remaining, acc):
        if i > n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        for p in range(remaining // i + 1):
            rec(i + 1, remaining - i * p, acc + [p])

    rec(1, n, [])
    return tuple(out)


@lru_cache(maxsize=None)
def schur_coefficient(kind: AlgebraKind, parts: tuple, direction: str) -> Scalar:
    """Coefficient of ``prod_i x_i**p_i`` in the imaginary change of basis."""
    total = sum(parts)
    denom = 1
    for p in parts:
        denom *= factorial(p)
    step = QQ_DIFF * kind.phase
    if direction == "prime_from_new":
        return step ** (total - 1) * Scalar.from_int(1) / denom
    if direction == "new_from_prime":
        return (-step) ** (total - 1) * Scalar.from_int(factorial(total - 1)) / denom
    raise ValueError(f"unknown Schur direction {direction!r}")


def schur_transform(kind: AlgebraKind, n: int, direction: str, family: str = "direct") -> Expression:
    """``e'_{n delta}`` in terms of the ``e_{j delta}`` (``prime_from_new``) or
    the reverse (``new_from_prime``), as an expression in imaginary generators."""
    if n < 1:
        raise ValueError("schur_transform needs n >= 1")
    primed_source = direction == "new_from_prime"
    terms = []
    for parts in partitions_by_part(n):
        m: tuple = ()
        for j, p in enumerate(parts, start=1):
            m += (RootVector(j, 0, family, primed_source),) * p
        terms.append((m, schur_coefficient(kind, parts, direction)))
    return Expression(kind, terms, "pbw")


# -- public constructors ----------------------------------------------------

_FREE: dict = {}
_ORACLE: dict = {}


def _free_builder(kind: AlgebraKind) -> _Builder:
    key = (kind.name, kind.theta)
    b = _FREE.get(key)
    if b is None:
        b = _FREE[key] = _Builder(_FreeOps(kind))
    return b


def _oracle_builder(kind: AlgebraKind, bound: int) -> _Builder:
    key = (kind.name, kind.theta)
    b = _ORACLE.get(key)
    if b is None:
        b = _ORACLE[key] = _Builder(_OracleOps(kind, bound))
    else:
        b.ops.alg.ensure(bound)
    return b


def _check(kind: AlgebraKind, gamma, primed: bool) -> Root:
    gamma = Root(*gamma)
    if not is_root(kind, gamma) or abs(gamma.k) > 1:
        raise RootError(f"{gamma} is not a reduced root of {kind.name}")
    if primed and gamma.k != 0:
        raise RootError("primed vectors exist only for imaginary roots")
    return gamma


def root_vector(kind: AlgebraKind, gamma, family: str = "direct", primed: bool = False) -> Expression:
    """Chevalley expansion (free, unreduced) of a Cartan-Weyl root vector."""
    gamma = _check(kind, gamma, primed)
    return _free_builder(kind).get(gamma, family, primed)


def oracle_expansion(kind: AlgebraKind, g: RootVector, bound: int):
    """Reduced normal form (oracle representation) of a root vector."""
    gamma = _check(kind, (g.n, g.k), g.primed)
    return _oracle_builder(kind, bound).get(gamma, g.family, g.primed)


def root_vector_normal_form(kind: AlgebraKind, g: RootVector, bound: int = 14) -> Expression:
    """Oracle normal form of a root vector, as an expression in Chevalley letters."""
    from .terms.oracle import oracle_for

    return oracle_for(kind, bound).to_expression(oracle_expansion(kind, g, bound))


def expand_to_chevalley(x: Expression) -> Expression:
    """Replace every composite root vector by its Chevalley expansion."""
    kind = x.kind
    out = Expression.zero(kind)
    for m, c in x.terms.items():
        term = Expression.scalar(kind, c)
        for g in m:
            if isinstance(g, Cartan) or ((g.n, g.k) in CHEVALLEY_ROOTS and not g.primed):
                term = term * Expression.generator(kind, g)
            else:
                term = term * root_vector(kind, (g.n, g.k), g.family, g.primed)
        out = out + term
    return out


def negative_imaginary(kind: AlgebraKind, n: int, family: str = "direct") -> Expression:
    """``e_{-n delta}`` as the conjugate of ``e_{n delta}``."""
    if n < 1:
        raise ValueError("negative_imaginary needs n >= 1")
    return involution(kind, "star", root_vector(kind, (n, 0), family))


# -- involutions ------------------------------------------------------------

def _letter_image(kind: AlgebraKind, name: str, g: RootVector):
    """Image of a Chevalley root generator: ``(coefficient, generator)``."""
    n, k = g.n, g.k
    theta = (kind.theta * k) % 2
    positive = (n, k) in ((0, 1), (1, -1))
    if name == "star":
        return 1, RootVector(-n, -k)
    if name == "ddagger":
        return (-1 if (positive and theta) else 1), RootVector(-n, -k)
    if name == "omega":
        if positive:
            return -1, RootVector(-n, -k)
        return (1 if theta else -1), RootVector(-n, -k)
    if name == "tau":
        return 1, RootVector(n + k, -k)
    raise ValueError(f"unknown involution {name!r}")


def _cartan_image(name: str, c: Cartan) -> Cartan:
    if name in ("star", "ddagger"):
        return c.inverse()
    if name == "omega":
        return c
    return Cartan(c.d, c.b, c.a)


def tau_generator(g: RootVector) -> RootVector:
    """Symbol-level Dynkin involution: swaps the direct and inverse families."""
    n, k = g.n, g.k
    if (n, k) in CHEVALLEY_ROOTS and not g.primed:
        return RootVector(n + k, -k)
    family = "inverse" if g.family == "direct" else "direct"
    return RootVector(n + k, -k, family, g.primed)


def involution(kind: AlgebraKind, name: str, x: Expression) -> Expression:
    """Apply ``star``, ``ddagger``, ``omega`` or ``tau``.

    Composite root vectors are expanded into Chevalley generators first; the
    result is a free Chevalley expression.
    """
    if name not in INVOLUTIONS:
        raise ValueError(f"unknown involution {name!r}; expected one of {INVOLUTIONS}")
    if any(not isinstance(g, Cartan) and ((g.n, g.k) not in CHEVALLEY_ROOTS or g.primed) for g in x.generators()):
        x = expand_to_chevalley(x)
    anti = name in ("star", "ddagger")
    antilinear = name != "tau"
    out: dict = {}
    for m, c in x.terms.items():
        coef = c.bar() if antilinear else c
        images = []
        for g in m:
            if isinstance(g, Cartan):
                images.append(_cartan_image(name, g))
            else:
                s, h = _letter_image(kind, name, g)
                if s == -1:
                    coef = -coef
                images.append(h)
        if anti:
            images.reverse()
            if name == "ddagger" and kind.theta:
                odd = [gen_parity(kind, g) for g in m]
                inversions = 0
                count = 0
                for p in odd:
                    if p:
                        inversions += count
                        count += 1
                if inversions % 2:
                    coef = -coef
        mono: tuple = ()
        for h in images:
            mono = concat(mono, (h,))
        old = out.get(mono)
        out[mono] = coef if old is None else old + coef
    return Expression(kind, {m: c for m, c in out.items() if not c.is_zero()}, "free")
