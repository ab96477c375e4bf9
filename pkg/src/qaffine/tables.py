"""Commutation relations between Cartan-Weyl root vectors (direct family).

Each family is a function of its integer parameters returning a
:class:`Relation` whose ``lhs`` is the (q-)bracket written with root-vector
generators and whose ``rhs`` is the closed form.  The PBW engine turns
these into rewrite rules; the verification suites check every instance
against the Chevalley normal form.

Chains: ``A(n)`` is ``e_{n delta + alpha}`` and ``B(n)`` is
``e_{n delta - alpha}`` for any integer ``n``; negative ``n`` gives the
lowering vectors, e.g. ``B(0) = e_{-alpha}``.  ``I(m)`` and ``P(m)`` are the
new and the primed imaginary vectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from .roots import AlgebraKind
from .scalars import ONE, QQ_DIFF, Scalar, a_const, a_of
from .terms.expression import Cartan, Expression, RootVector, cartan_of_root, commutator

__all__ = [
    "Relation",
    "FAMILIES",
    "Family",
    "family",
    "instances",
    "A",
    "B",
    "I",
    "P",
    "defining_relations",
]


@dataclass
class Relation:
    family: str
    params: tuple
    lhs: Expression
    rhs: Expression
    notes: str = ""

    @property
    def label(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family}({args})"


@dataclass
class Family:
    name: str
    build: Callable
    domain: Callable  # bound -> iterable of parameter dicts
    description: str = ""
    tags: tuple = field(default_factory=tuple)


# -- building blocks --------------------------------------------------------

def _gen(kind, g) -> Expression:
    return Expression.generator(kind, g)


def A(kind: AlgebraKind, n: int) -> Expression:
    return _gen(kind, RootVector(n, 1))


def B(kind: AlgebraKind, n: int) -> Expression:
    return _gen(kind, RootVector(n, -1))


def I(kind: AlgebraKind, m: int) -> Expression:
    return _gen(kind, RootVector(m, 0))


def P(kind: AlgebraKind, m: int) -> Expression:
    return _gen(kind, RootVector(m, 0, "direct", True))


def K(kind: AlgebraKind, c: Cartan) -> Expression:
    return Expression.generator(kind, c)


def k_root(kind, n: int, k: int, power: int = 1) -> Expression:
    return K(kind, cartan_of_root((n, k), power))


def k_delta(kind, power: int) -> Expression:
    return K(kind, Cartan(0, power, power))


def qa(kind: AlgebraKind, e: int) -> Scalar:
    """``q_alpha**e`` with ``q_alpha = (-1)^theta q^2``."""
    return Scalar.q_power(2 * e, kind.phase ** (e % 2))


def sgn(kind: AlgebraKind, e: int) -> int:
    """``(-1)**(e * theta)``."""
    return kind.phase ** (e % 2)


def _bracket(x, y, twisted=False):
    return commutator(x, y, twisted)


def _h(kind, c: Cartan) -> Expression:
    """``(k - k**-1) / (q - q**-1)``."""
    return (K(kind, c) - K(kind, c.inverse())).scale(QQ_DIFF.inverse())


def _qa2m1(kind):
    return qa(kind, 2) - ONE


def _qam1(kind):
    return qa(kind, 1) - ONE


# -- Cartan / contraction relations ------------------------------------------

def _contract_plus(kind, n):
    c = cartan_of_root((n, 1))
    return Relation("plus-contraction", (("n", n),), _bracket(A(kind, n), B(kind, -n)), _h(kind, c).scale(sgn(kind, n)))


def _contract_minus(kind, n):
    c = cartan_of_root((n, -1))
    return Relation(
        "minus-contraction", (("n", n),), _bracket(B(kind, n), A(kind, -n)), _h(kind, c).scale(sgn(kind, n - 1))
    )


# -- real chains --------------------------------------------------------------

def _plus_chain_odd(kind, n, m):
    rhs = Expression.zero(kind)
    for l in range(1, m):
        rhs = rhs + (A(kind, n + l) * A(kind, n + 2 * m - 1 - l)).scale(qa(kind, -l))
    return Relation(
        "plus-chain-odd", (("n", n), ("m", m)), _bracket(A(kind, n), A(kind, n + 2 * m - 1), True),
        rhs.scale(_qa2m1(kind)),
    )


def _plus_chain_even(kind, n, m):
    rhs = (A(kind, n + m) ** 2).scale(_qam1(kind) * qa(kind, -m + 1))
    for l in range(1, m):
        rhs = rhs + (A(kind, n + l) * A(kind, n + 2 * m - l)).scale(_qa2m1(kind) * qa(kind, -l))
    return Relation("plus-chain-even", (("n", n), ("m", m)), _bracket(A(kind, n), A(kind, n + 2 * m), True), rhs)


def _minus_chain_odd(kind, n, m):
    rhs = Expression.zero(kind)
    for l in range(1, m):
        rhs = rhs + (B(kind, n + 2 * m - 1 - l) * B(kind, n + l)).scale(qa(kind, -l))
    return Relation(
        "minus-chain-odd", (("n", n), ("m", m)), _bracket(B(kind, n + 2 * m - 1), B(kind, n), True),
        rhs.scale(_qa2m1(kind)),
    )


def _minus_chain_even(kind, n, m, reorder=True):
    rhs = (B(kind, n + m) ** 2).scale(_qam1(kind) * qa(kind, -m + 1))
    for l in range(1, m):
        pair = B(kind, n + 2 * m - l) * B(kind, n + l) if reorder else B(kind, n + l) * B(kind, n + 2 * m - l)
        rhs = rhs + pair.scale(_qa2m1(kind) * qa(kind, -l))
    return Relation("minus-chain-even", (("n", n), ("m", m)), _bracket(B(kind, n + 2 * m), B(kind, n), True), rhs)


def _mixed_plus(kind, n, m, even: bool):
    top = n + 2 * m - (0 if even else 1)
    lhs = _bracket(A(kind, -n), A(kind, top))
    s = sgn(kind, n - 1)
    rhs = Expression.zero(kind)
    kn = k_root(kind, n, -1)
    for l in range(n, n + m):
        rhs = rhs + (kn * A(kind, l - n) * A(kind, top - l)).scale(-s * _qa2m1(kind) * qa(kind, -l))
    for l in range(1, n):
        rhs = rhs + (k_delta(kind, l) * A(kind, -n + l) * A(kind, top - l)).scale(
            sgn(kind, l) * _qa2m1(kind) * qa(kind, -l)
        )
    if even:
        rhs = rhs + (kn * A(kind, m) ** 2).scale(-s * _qam1(kind) * qa(kind, -m - n + 1))
    return Relation("mixed-plus-chain-" + ("even" if even else "odd"), (("n", n), ("m", m)), lhs, rhs)


def _mixed_minus(kind, n, m, even: bool):
    top = n + 2 * m - (0 if even else 1)
    lhs = _bracket(B(kind, top), B(kind, -n))
    s = sgn(kind, n + 1)
    kn = k_root(kind, n, 1, -1)
    rhs = Expression.zero(kind)
    for l in range(n + 1, n + m):
        rhs = rhs + (B(kind, top - l) * B(kind, l - n) * kn).scale(-s * _qa2m1(kind) * qa(kind, -l))
    # the l = n term carries k_delta^-n, not k_(n delta + alpha)^-1
    for l in range(1, n + 1):
        rhs = rhs + (B(kind, top - l) * B(kind, -n + l) * k_delta(kind, -l)).scale(
            sgn(kind, l) * _qa2m1(kind) * qa(kind, -l)
        )
    if even:
        rhs = rhs + (B(kind, m) ** 2 * kn).scale(-s * _qam1(kind) * qa(kind, -m - n + 1))
    return Relation("mixed-minus-chain-" + ("even" if even else "odd"), (("n", n), ("m", m)), lhs, rhs)


# -- real with primed imaginary ----------------------------------------------

def _plus_minus_prime(kind, n, m):
    return Relation("plus-minus-prime", (("n", n), ("m", m)), _bracket(A(kind, n), B(kind, m), True), P(kind, n + m))


def _plus_negminus(kind, n, m):
    rhs = (P(kind, n - m) * k_root(kind, m, 1, -1)).scale(-sgn(kind, m + 1))
    return Relation("plus-negminus", (("n", n), ("m", m)), _bracket(A(kind, n), B(kind, -m)), rhs)


def _negplus_minus(kind, n, m):
    rhs = (k_root(kind, m, -1) * P(kind, n - m)).scale(-sgn(kind, m - 1))
    return Relation("negplus-minus", (("n", n), ("m", m)), _bracket(A(kind, -m), B(kind, n)), rhs)


def _primes_commute(kind, n, m):
    return Relation("primes-commute", (("n", n), ("m", m)), _bracket(P(kind, n), P(kind, m)), Expression.zero(kind))


def _plus_prime(kind, n, m):
    a = a_const()
    rhs = A(kind, n + m).scale(qa(kind, -m + 1) * a)
    for l in range(1, m):
        rhs = rhs + (A(kind, n + l) * P(kind, m - l)).scale(_qa2m1(kind) * qa(kind, -l))
    return Relation("plus-prime", (("n", n), ("m", m)), _bracket(A(kind, n), P(kind, m)), rhs)


def _prime_minus(kind, n, m):
    a = a_const()
    rhs = B(kind, n + m).scale(qa(kind, -m + 1) * a)
    for l in range(1, m):
        rhs = rhs + (P(kind, m - l) * B(kind, n + l)).scale(_qa2m1(kind) * qa(kind, -l))
    return Relation("prime-minus", (("n", n), ("m", m)), _bracket(P(kind, m), B(kind, n)), rhs)


def _negplus_prime_low(kind, n, m):
    a = a_const()
    s = sgn(kind, n - 1)
    kn = k_root(kind, n, -1)
    rhs = (kn * A(kind, m - n)).scale(-s * qa(kind, -m + 1) * a)
    for l in range(n, m):
        rhs = rhs + (kn * A(kind, l - n) * P(kind, m - l)).scale(-s * _qa2m1(kind) * qa(kind, -l))
    for l in range(1, n):
        rhs = rhs + (k_delta(kind, l) * A(kind, -n + l) * P(kind, m - l)).scale(
            sgn(kind, l) * _qa2m1(kind) * qa(kind, -l)
        )
    return Relation("negplus-prime-low", (("n", n), ("m", m)), _bracket(A(kind, -n), P(kind, m)), rhs)


def _negplus_prime_high(kind, n, m):
    a = a_const()
    rhs = (k_delta(kind, m) * A(kind, -n + m)).scale(sgn(kind, m) * qa(kind, -m + 1) * a)
    for l in range(1, m):
        rhs = rhs + (k_delta(kind, l) * A(kind, -n + l) * P(kind, m - l)).scale(
            sgn(kind, l) * _qa2m1(kind) * qa(kind, -l)
        )
    return Relation("negplus-prime-high", (("n", n), ("m", m)), _bracket(A(kind, -n), P(kind, m)), rhs)


def _prime_negminus_high(kind, n, m, first=None, last=None):
    a = a_const()
    s = sgn(kind, n + 1)
    kn = k_root(kind, n, 1, -1)
    rhs = (B(kind, m - n) * kn).scale(-s * qa(kind, -m + 1) * a)
    for l in range(n + 1 if first is None else first, m):
        rhs = rhs + (P(kind, m - l) * B(kind, l - n) * kn).scale(-s * _qa2m1(kind) * qa(kind, -l))
    for l in range(1, (n if last is None else last) + 1):
        rhs = rhs + (P(kind, m - l) * B(kind, -n + l) * k_delta(kind, -l)).scale(
            sgn(kind, l) * _qa2m1(kind) * qa(kind, -l)
        )
    return Relation("prime-negminus-high", (("n", n), ("m", m)), _bracket(P(kind, m), B(kind, -n)), rhs)


def _prime_negminus_low(kind, n, m):
    a = a_const()
    rhs = (B(kind, -n + m) * k_delta(kind, -m)).scale(sgn(kind, m) * qa(kind, -m + 1) * a)
    for l in range(1, m):
        rhs = rhs + (P(kind, m - l) * B(kind, -n + l) * k_delta(kind, -l)).scale(
            sgn(kind, l) * _qa2m1(kind) * qa(kind, -l)
        )
    return Relation("prime-negminus-low", (("n", n), ("m", m)), _bracket(P(kind, m), B(kind, -n)), rhs)


# -- real with new imaginary ---------------------------------------------------

def _plus_imag(kind, n, m):
    rhs = A(kind, n + m).scale(sgn(kind, m - 1) * a_of(m))
    return Relation("plus-imag", (("n", n), ("m", m)), _bracket(A(kind, n), I(kind, m)), rhs)


def _imag_minus(kind, n, m):
    rhs = B(kind, n + m).scale(sgn(kind, m - 1) * a_of(m))
    return Relation("imag-minus", (("n", n), ("m", m)), _bracket(I(kind, m), B(kind, n)), rhs)


def _negplus_imag_low(kind, n, m):
    rhs = (k_root(kind, n, -1) * A(kind, m - n)).scale(-sgn(kind, n + m) * a_of(m))
    return Relation("negplus-imag-low", (("n", n), ("m", m)), _bracket(A(kind, -n), I(kind, m)), rhs)


def _negplus_imag_high(kind, n, m):
    rhs = (k_delta(kind, m) * A(kind, -n + m)).scale(sgn(kind, 1) * a_of(m))
    return Relation("negplus-imag-high", (("n", n), ("m", m)), _bracket(A(kind, -n), I(kind, m)), rhs)


def _imag_negminus_high(kind, n, m):
    rhs = (B(kind, m - n) * k_root(kind, n, 1, -1)).scale(-sgn(kind, n + m) * a_of(m))
    return Relation("imag-negminus-high", (("n", n), ("m", m)), _bracket(I(kind, m), B(kind, -n)), rhs)


def _imag_negminus_low(kind, n, m):
    rhs = (B(kind, m - n) * k_delta(kind, -m)).scale(sgn(kind, 1) * a_of(m))
    return Relation("imag-negminus-low", (("n", n), ("m", m)), _bracket(I(kind, m), B(kind, -n)), rhs)


def _negative_primes_commute(kind, n, m):
    return Relation("negative-primes-commute", (("n", n), ("m", m)),
                    _bracket(P(kind, -n), P(kind, -m)), Expression.zero(kind))


_CONJUGATORS = {"d": Cartan(1, 0, 0), "a": Cartan(0, 1, 0), "d-a": Cartan(0, 0, 1)}


def _cartan_conjugation(kind, n, k, c):
    """``k e k**-1 = q**s e`` for a root vector of weight ``n delta + k alpha``."""
    from .terms.expression import cartan_power_shift

    g = _gen(kind, RootVector(n, k, "direct", k == 0))
    kc = K(kind, _CONJUGATORS[c])
    kinv = K(kind, _CONJUGATORS[c].inverse())
    s = cartan_power_shift(_CONJUGATORS[c], (n, k))
    return Relation("cartan-conjugation", (("n", n), ("k", k), ("c", c)), kc * g * kinv, g.scale(Scalar.q_power(s)))


def _imag_negimag(kind, n, m):
    rhs = Expression.zero(kind)
    if n == m:
        rhs = (k_delta(kind, m) - k_delta(kind, -m)).scale(a_of(m) * QQ_DIFF.inverse())
    return Relation("imag-negimag", (("n", n), ("m", m)), _bracket(I(kind, n), I(kind, -m)), rhs)


# -- families and their parameter domains ---------------------------------------

def _nm(n_lo, m_lo, cond=lambda n, m: True):
    def domain(bound):
        for n in range(n_lo, bound + 1):
            for m in range(m_lo, bound + 1):
                if cond(n, m):
                    yield {"n": n, "m": m}

    return domain


def _n(lo):
    def domain(bound):
        for n in range(lo, bound + 1):
            yield {"n": n}

    return domain


def _conjugation_domain(bound):
    for n in range(-bound, bound + 1):
        for k in (1, 0, -1):
            if k == 0 and n == 0:
                continue
            for c in _CONJUGATORS:
                yield {"n": n, "k": k, "c": c}


FAMILIES: dict[str, Family] = {}


def _register(name, build, domain, description, tags=()):
    FAMILIES[name] = Family(name, build, domain, description, tags)


_register("cartan-conjugation", _cartan_conjugation, _conjugation_domain,
          "k e k^-1 = q^s e for real and primed imaginary vectors", ("cartan",))
_register("plus-contraction", _contract_plus, _n(0), "[A(n), B(-n)] for n >= 0", ("real",))
_register("minus-contraction", _contract_minus, _n(1), "[B(n), A(-n)] for n > 0", ("real",))
_register("plus-chain-odd", _plus_chain_odd, _nm(0, 1), "[A(n), A(n+2m-1)]_q", ("real",))
_register("plus-chain-even", _plus_chain_even, _nm(0, 1), "[A(n), A(n+2m)]_q", ("real",))
_register("minus-chain-odd", _minus_chain_odd, _nm(1, 1), "[B(n+2m-1), B(n)]_q", ("real",))
_register("minus-chain-even", _minus_chain_even, _nm(1, 1), "[B(n+2m), B(n)]_q", ("real",))
_register("mixed-plus-chain-odd", lambda k, n, m: _mixed_plus(k, n, m, False), _nm(1, 1), "[A(-n), A(n+2m-1)]", ("real",))
_register("mixed-plus-chain-even", lambda k, n, m: _mixed_plus(k, n, m, True), _nm(1, 0), "[A(-n), A(n+2m)]", ("real",))
_register("mixed-minus-chain-odd", lambda k, n, m: _mixed_minus(k, n, m, False), _nm(0, 1), "[B(n+2m-1), B(-n)]", ("real",))
_register("mixed-minus-chain-even", lambda k, n, m: _mixed_minus(k, n, m, True), _nm(0, 1), "[B(n+2m), B(-n)]", ("real",))
_register("plus-minus-prime", _plus_minus_prime, _nm(0, 1), "[A(n), B(m)]_q = P(n+m)", ("prime",))
_register("plus-negminus", _plus_negminus, _nm(1, 0, lambda n, m: n > m), "[A(n), B(-m)], n > m", ("prime",))
_register("negplus-minus", _negplus_minus, _nm(2, 1, lambda n, m: n > m), "[A(-m), B(n)], n > m", ("prime",))
_register("primes-commute", _primes_commute, _nm(1, 1), "[P(n), P(m)] = 0", ("prime",))
_register("negative-primes-commute", _negative_primes_commute, _nm(1, 1), "[P(-n), P(-m)] = 0", ("prime",))
_register("plus-prime", _plus_prime, _nm(0, 1), "[A(n), P(m)]", ("prime",))
_register("prime-minus", _prime_minus, _nm(1, 1), "[P(m), B(n)]", ("prime",))
_register("negplus-prime-low", _negplus_prime_low, _nm(1, 1, lambda n, m: m >= n), "[A(-n), P(m)], m >= n", ("prime",))
_register("negplus-prime-high", _negplus_prime_high, _nm(2, 1, lambda n, m: n > m), "[A(-n), P(m)], n > m", ("prime",))
_register("prime-negminus-high", _prime_negminus_high, _nm(0, 1, lambda n, m: m > n), "[P(m), B(-n)], m > n", ("prime",))
_register("prime-negminus-low", _prime_negminus_low, _nm(1, 1, lambda n, m: n >= m), "[P(m), B(-n)], n >= m", ("prime",))
_register("plus-imag", _plus_imag, _nm(0, 1), "[A(n), I(m)]", ("imaginary",))
_register("imag-minus", _imag_minus, _nm(1, 1), "[I(m), B(n)]", ("imaginary",))
_register("negplus-imag-low", _negplus_imag_low, _nm(1, 1, lambda n, m: m >= n), "[A(-n), I(m)], m >= n", ("imaginary",))
_register("negplus-imag-high", _negplus_imag_high, _nm(2, 1, lambda n, m: n > m), "[A(-n), I(m)], n > m", ("imaginary",))
_register("imag-negminus-high", _imag_negminus_high, _nm(0, 1, lambda n, m: m > n), "[I(m), B(-n)], m > n", ("imaginary",))
_register("imag-negminus-low", _imag_negminus_low, _nm(1, 1, lambda n, m: n >= m), "[I(m), B(-n)], n >= m", ("imaginary",))
_register("imag-negimag", _imag_negimag, _nm(1, 1), "[I(n), I(-m)]", ("imaginary",))


def family(name: str) -> Family:
    return FAMILIES[name]


def instances(kind: AlgebraKind, bound: int = 2, names=None) -> Iterator[Relation]:
    """All instances with every parameter at most ``bound``."""
    for name, fam in FAMILIES.items():
        if names is not None and name not in names:
            continue
        for params in fam.domain(bound):
            yield fam.build(kind, **params)


# -- the defining relations -------------------------------------------------------

_DEFINING = (
    ("cartan-commute", "k(a)*k(d-a)", "k(d-a)*k(a)"),
    ("cartan-commute-d", "k(d)*k(a)", "k(a)*k(d)"),
    ("cartan-inverse", "k(a)*k(a)^-1", "1"),
)
for _c in ("d", "a", "d-a"):
    for _e, _w in (("a", "a"), ("-a", "-a"), ("d-a", "d-a"), ("-(d-a)", "-(d-a)")):
        _DEFINING += ((f"cartan-conjugation[{_c};{_e}]", f"k({_c})*e({_e})*k({_c})^-1", _w),)
_DEFINING += (
    ("cross-zero[+a]", "[e(a), e(-(d-a))]", "0"),
    ("cross-zero[-a]", "[e(-a), e(d-a)]", "0"),
    ("contraction[a]", "[e(a), e(-a)]", "(k(a) - k(a)^-1)/(q - q^-1)"),
    ("contraction[d-a]", "[e(d-a), e(-(d-a))]", "(k(d-a) - k(d-a)^-1)/(q - q^-1)"),
    ("serre-a[+]", "[e(a),[e(a),[e(a),e(d-a)]_q]_q]_q", "0"),
    ("serre-a[-]", "[e(-a),[e(-a),[e(-a),e(-(d-a))]_q]_q]_q", "0"),
    ("serre-b[+]", "[[[e(a),e(d-a)]_q,e(d-a)]_q,e(d-a)]_q", "0"),
    ("serre-b[-]", "[[[e(-a),e(-(d-a))]_q,e(-(d-a))]_q,e(-(d-a))]_q", "0"),
    ("serre-a-reversed[+]", "[[[e(d-a),e(a)]_q,e(a)]_q,e(a)]_q", "0"),
    ("serre-a-reversed[-]", "[[[e(-(d-a)),e(-a)]_q,e(-a)]_q,e(-a)]_q", "0"),
    ("serre-b-reversed[+]", "[e(d-a),[e(d-a),[e(d-a),e(a)]_q]_q]_q", "0"),
    ("serre-b-reversed[-]", "[e(-(d-a)),[e(-(d-a)),[e(-(d-a)),e(-a)]_q]_q]_q", "0"),
)


def _conjugation_rhs(kind: AlgebraKind, label: str, text: str) -> Expression:
    from .roots import form, parse_root
    from .terms.parser import parse_expression

    c, e = label[len("cartan-conjugation["):-1].split(";")
    gamma = {"d": None, "a": (0, 1), "d-a": (1, -1)}[c]
    beta = parse_root(e)
    if gamma is None:
        power = beta[0]  # (d, n delta + k alpha) = n
    else:
        power = int(form(gamma, beta))
    return parse_expression(text, kind).scale(Scalar.q_power(power))


def defining_relations(kind: AlgebraKind, derived: bool = True) -> list[Relation]:
    """The Chevalley presentation, with the reversed Serre forms when ``derived``."""
    from .terms.parser import parse_expression

    out = []
    for label, lhs, rhs in _DEFINING:
        if not derived and "reversed" in label:
            continue
        if label.startswith("cartan-conjugation"):
            right = _conjugation_rhs(kind, label, f"e({rhs})")
        else:
            right = parse_expression(rhs, kind)
        out.append(Relation(label, (), parse_expression(lhs, kind), right))
    return out
