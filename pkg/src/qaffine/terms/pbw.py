"""PBW normal form driven by the Cartan-Weyl commutation tables.

A PBW monomial is ``(lowering vectors) (Cartan) (raising vectors)``.  Raising
vectors of the direct family ascend along

    e_alpha, e_{delta+alpha}, e_{2delta+alpha}, ..., e_delta, e_{2delta}, ...,
    e_{2delta-alpha}, e_{delta-alpha}

and lowering vectors follow the conjugate order, so that ``star`` maps PBW
monomials to PBW monomials.  Primed imaginary vectors are replaced by their
Schur expansions on entry.  Inverse-family input is carried to the direct
family by the Dynkin involution, normalized there and carried back.

Each adjacent out-of-order pair ``x y`` is rewritten as ``c * y x + R``
using a table relation or its conjugate under ``star``.
"""
from __future__ import annotations

from functools import lru_cache

from ..roots import AlgebraKind
from ..scalars import ONE, Scalar
from .expression import (
    CHEVALLEY_ROOTS,
    Cartan,
    Expression,
    ExpressionError,
    RootVector,
    cartan_power_shift,
    gen_weight,
)

__all__ = ["normalize_pbw", "pbw_key", "is_pbw_monomial", "star_symbols", "tau_symbols", "family_of"]


# -- ordering ----------------------------------------------------------------

def _positive(g: RootVector) -> bool:
    return g.n > 0 or (g.n == 0 and g.k > 0)


def _raising_key(n: int, k: int) -> tuple:
    if k == 1:
        return (0, n)
    if k == 0:
        return (1, n)
    return (2, -n)


def pbw_key(g) -> tuple:
    """Sort key: lowering vectors, then the Cartan part, then raising vectors."""
    if isinstance(g, Cartan):
        return (1,)
    if _positive(g):
        return (2, _raising_key(g.n, g.k))
    a, b = _raising_key(-g.n, -g.k)
    return (0, (-a, -b))


def is_pbw_monomial(m, family: str = "direct") -> bool:
    """True when ``m`` is an ordered monomial of the given family's PBW basis."""
    if family == "inverse":
        m = tuple(_tau_gen(g) for g in m)
    prev = None
    for g in m:
        if isinstance(g, RootVector) and g.primed:
            return False
        key = pbw_key(g)
        if prev is not None:
            if key < prev or (key == prev == (1,)):
                return False
        prev = key
    return True


# -- symbol-level involutions ------------------------------------------------

def _chevalley(g) -> bool:
    return isinstance(g, RootVector) and (g.n, g.k) in CHEVALLEY_ROOTS and not g.primed


def star_symbols(x: Expression) -> Expression:
    """Conjugation acting on root-vector symbols: ``e_gamma -> e_{-gamma}``.

    Valid because every root vector satisfies ``(e_gamma)* = e_{-gamma}``;
    the verification suite checks this identity against the oracle.
    """
    terms = []
    for m, c in x.terms.items():
        out = tuple(
            g.inverse() if isinstance(g, Cartan) else RootVector(-g.n, -g.k, g.family, g.primed) for g in reversed(m)
        )
        terms.append((out, c.bar()))
    return Expression(x.kind, terms, x.basis)


def _tau_gen(g):
    if isinstance(g, Cartan):
        return Cartan(g.d, g.b, g.a)
    if _chevalley(g):
        return RootVector(g.n + g.k, -g.k)
    family = "inverse" if g.family == "direct" else "direct"
    return RootVector(g.n + g.k, -g.k, family, g.primed)


def tau_symbols(x: Expression) -> Expression:
    """Dynkin involution on symbols; swaps the direct and inverse families."""
    return Expression(x.kind, [(tuple(_tau_gen(g) for g in m), c) for m, c in x.terms.items()], x.basis)


def family_of(x: Expression) -> str:
    fams = {g.family for g in x.generators() if isinstance(g, RootVector) and not _chevalley(g)}
    if len(fams) > 1:
        raise ExpressionError("expression mixes the direct and inverse Cartan-Weyl families")
    return fams.pop() if fams else "direct"


# -- rewrite rules ---------------------------------------------------------------

def _relation(kind: AlgebraKind, x: RootVector, y: RootVector):
    """A table relation containing the monomials ``x y`` and ``y x``.

    Returns ``(relation, conjugate)``; when ``conjugate`` is true the relation
    must be conjugated by ``star`` first.
    """
    from .. import tables as T

    i, k1 = x.n, x.k
    j, k2 = y.n, y.k
    if _positive(x) and _positive(y):
        if k1 == 1 and k2 == 1:  # A_i A_j, i > j
            d = i - j
            if d % 2:
                return T._plus_chain_odd(kind, j, (d + 1) // 2), False
            return T._plus_chain_even(kind, j, d // 2), False
        if k1 == 0 and k2 == 1:
            return T._plus_imag(kind, j, i), False
        if k1 == -1 and k2 == 1:
            return T._plus_minus_prime(kind, j, i), False
        if k1 == -1 and k2 == 0:
            return T._imag_minus(kind, i, j), False
        if k1 == -1 and k2 == -1:  # B_i B_j, i < j
            d = j - i
            if d % 2:
                return T._minus_chain_odd(kind, i, (d + 1) // 2), False
            return T._minus_chain_even(kind, i, d // 2), False
        raise AssertionError((x, y))
    if not _positive(x) and not _positive(y):
        return _relation(kind, RootVector(-j, -k2), RootVector(-i, -k1))[0], True
    # x raising, y lowering
    if k1 == 1:
        if k2 == -1:  # A_i B_{-m}
            m = -j
            if i == m:
                return T._contract_plus(kind, i), False
            if i > m:
                return T._plus_negminus(kind, i, m), False
            return T._plus_negminus(kind, m, i), True
        if k2 == 1:  # A_i A_{-m}
            m = -j
            d = i - m
            if d >= 0:
                if d % 2:
                    return T._mixed_plus(kind, m, (d + 1) // 2, False), False
                return T._mixed_plus(kind, m, d // 2, True), False
            d = -d
            if d % 2:
                return T._mixed_minus(kind, i, (d + 1) // 2, False), True
            return T._mixed_minus(kind, i, d // 2, True), True
        m = -j  # A_i I_{-m}
        if m > i:
            return T._imag_negminus_high(kind, i, m), True
        return T._imag_negminus_low(kind, i, m), True
    if k1 == 0:
        if k2 == -1:
            m = -j
            if i > m:
                return T._imag_negminus_high(kind, m, i), False
            return T._imag_negminus_low(kind, m, i), False
        if k2 == 1:
            m = -j
            if i >= m:
                return T._negplus_imag_low(kind, m, i), False
            return T._negplus_imag_high(kind, m, i), False
        return T._imag_negimag(kind, i, -j), False
    # x = B_i
    if k2 == 1:  # B_i A_{-m}
        m = -j
        if i == m:
            return T._contract_minus(kind, i), False
        if i > m:
            return T._negplus_minus(kind, i, m), False
        return T._negplus_minus(kind, m, i), True
    if k2 == -1:  # B_i B_{-m}
        m = -j
        d = i - m
        if d > 0:
            if d % 2:
                return T._mixed_minus(kind, m, (d + 1) // 2, False), False
            return T._mixed_minus(kind, m, d // 2, True), False
        d = -d
        if d % 2:
            return T._mixed_plus(kind, i, (d + 1) // 2, False), True
        return T._mixed_plus(kind, i, d // 2, True), True
    m = -j  # B_i I_{-m}
    if m >= i:
        return T._negplus_imag_low(kind, i, m), True
    return T._negplus_imag_high(kind, i, m), True


@lru_cache(maxsize=None)
def _swap_rule(kind: AlgebraKind, x: RootVector, y: RootVector):
    """``x y = c * (y x) + rest`` for an out-of-order pair."""
    if x.k == 0 and y.k == 0 and x.n * y.n > 0:
        return ONE, Expression.zero(kind)  # imaginary vectors of one sign commute
    rel, conj = _relation(kind, x, y)
    lhs, rhs = rel.lhs, rel.rhs
    if conj:
        lhs, rhs = star_symbols(lhs), star_symbols(rhs)
    alpha = lhs.terms.get((x, y))
    beta = lhs.terms.get((y, x))
    if alpha is None or beta is None or len(lhs.terms) != 2:
        raise AssertionError(f"relation {rel.label} does not relate {x} and {y}")
    inv = alpha.inverse()
    return -(beta * inv), _substitute_primes(rhs.scale(inv))


@lru_cache(maxsize=None)
def _prime_expansion(kind: AlgebraKind, n: int) -> Expression:
    from ..cartanweyl import schur_transform

    if n > 0:
        return schur_transform(kind, n, "prime_from_new")
    return star_symbols(schur_transform(kind, -n, "prime_from_new"))


def _substitute_primes(x: Expression) -> Expression:
    if not any(isinstance(g, RootVector) and g.primed for g in x.generators()):
        return x
    out = Expression.zero(x.kind)
    for m, c in x.terms.items():
        term = Expression.scalar(x.kind, c)
        for g in m:
            if isinstance(g, RootVector) and g.primed:
                term = term * _prime_expansion(x.kind, g.n)
            else:
                term = term * Expression.generator(x.kind, g)
        out = out + term
    return out


# -- the rewriting ---------------------------------------------------------------

class _Normalizer:
    def __init__(self, kind: AlgebraKind):
        self.kind = kind
        self.memo: dict = {}

    def monomial(self, m: tuple) -> dict:
        hit = self.memo.get(m)
        if hit is not None:
            return hit
        out = self._monomial(m)
        self.memo[m] = out
        return out

    def _monomial(self, m: tuple) -> dict:
        for p in range(len(m) - 1):
            x, y = m[p], m[p + 1]
            kx, ky = pbw_key(x), pbw_key(y)
            if kx < ky:
                continue
            head, tail = m[:p], m[p + 2:]
            if isinstance(x, Cartan) and isinstance(y, Cartan):
                z = x * y
                return self.monomial(head + (() if z.is_identity() else (z,)) + tail)
            if kx == ky and x == y:
                continue
            if isinstance(x, Cartan):  # K y = q^s y K
                c = Scalar.q_power(cartan_power_shift(x, gen_weight(y)))
                return _scaled(self.monomial(head + (y, x) + tail), c)
            if isinstance(y, Cartan):  # x K = q^-s K x
                c = Scalar.q_power(-cartan_power_shift(y, gen_weight(x)))
                return _scaled(self.monomial(head + (y, x) + tail), c)
            c, rest = _swap_rule(self.kind, x, y)
            out: dict = {}
            if not c.is_zero():
                _add(out, self.monomial(head + (y, x) + tail), c)
            for r, cr in rest.terms.items():
                _add(out, self.monomial(_clean(head + r + tail)), cr)
            return out
        return {m: ONE}


def _clean(m: tuple) -> tuple:
    out: list = []
    for g in m:
        if isinstance(g, Cartan):
            if g.is_identity():
                continue
            if out and isinstance(out[-1], Cartan):
                z = out.pop() * g
                if not z.is_identity():
                    out.append(z)
                continue
        out.append(g)
    return tuple(out)


def _scaled(d: dict, c: Scalar) -> dict:
    return {m: v * c for m, v in d.items()}


def _add(acc: dict, d: dict, c: Scalar) -> None:
    for m, v in d.items():
        x = v * c
        old = acc.get(m)
        if old is None:
            acc[m] = x
        else:
            s = old + x
            if s.is_zero():
                del acc[m]
            else:
                acc[m] = s


_NORMALIZERS: dict = {}


def _normalizer(kind: AlgebraKind) -> _Normalizer:
    key = (kind.name, kind.theta)
    nz = _NORMALIZERS.get(key)
    if nz is None:
        nz = _NORMALIZERS[key] = _Normalizer(kind)
    return nz


def normalize_pbw(x: Expression, family: str | None = None) -> Expression:
    """Rewrite ``x`` into the PBW basis of its Cartan-Weyl family.

    ``family`` defaults to the one detected from the root vectors of ``x``;
    pass it explicitly when ``x`` holds Chevalley generators only.
    """
    detected = family_of(x)
    if family is None:
        family = detected
    elif detected != family and any(
        isinstance(g, RootVector) and not _chevalley(g) for g in x.generators()
    ):
        raise ExpressionError(f"expression belongs to the {detected} family, not {family}")
    if family == "inverse":
        return tau_symbols(normalize_pbw(tau_symbols(x), "direct"))
    x = _substitute_primes(x)
    nz = _normalizer(x.kind)
    out: dict = {}
    for m, c in x.terms.items():
        _add(out, nz.monomial(_clean(m)), c)
    return Expression(x.kind, out, "pbw")
