"""Degree-truncated universal R-matrix ``R = R+ R0 R- K`` and its checks.

Truncation is by the height ``2n + k`` of the leg-1 weight ``n delta + k alpha``.
Every factor of ``R+ R0 R-`` has leg-1 weights of positive height, so a
product truncated at height ``D`` is exact in all components of height at
most ``D``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .roots import AlgebraKind, Root, RootError, q_gamma
from .scalars import ONE, Q, Scalar, d_of, paren_qfactorial
from .terms.expression import Cartan, Expression, ExpressionError, RootVector, monomial_weight
from .hopf import TensorExpression, conjugate_by_k, coproduct, opposite_coproduct

__all__ = [
    "RFactorization",
    "q_exp",
    "phase_A",
    "factor_sign",
    "build_r",
    "k_conjugate",
    "check_intertwining",
    "ybe_check_eval",
    "evaluation_representation_check",
    "leg_height",
]

Q_DIFF = Q - Q.inverse()


def leg_height(key, leg: int = 0) -> int:
    n, k = monomial_weight(key[leg])
    return 2 * n + k


def _truncate(t: TensorExpression, degree: int) -> TensorExpression:
    return t.filter(lambda key: leg_height(key) <= degree)


def q_exp(x: TensorExpression, p: Scalar, order: int, degree: int | None = None) -> TensorExpression:
    """``sum_{n <= order} x**n / (n)_p!``, optionally truncated at leg-1 height ``degree``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    out = TensorExpression.one(x.kind, x.legs)
    power = TensorExpression.one(x.kind, x.legs)
    for n in range(1, order + 1):
        power = power * x
        if degree is not None:
            power = _truncate(power, degree)
        fact = paren_qfactorial(n, p)
        if fact.is_zero():
            raise ZeroDivisionError(f"(n)_p! vanishes at n = {n}")
        out = out + power.scale(fact.inverse())
    return out


def _exp(x: TensorExpression, order: int, degree: int) -> TensorExpression:
    out = TensorExpression.one(x.kind, x.legs)
    power = TensorExpression.one(x.kind, x.legs)
    fact = 1
    for n in range(1, order + 1):
        power = _truncate(power * x, degree)
        fact *= n
        out = out + power.scale(Scalar.from_int(Fraction(1, fact)))
    return out


def phase_A(kind: AlgebraKind, gamma) -> int:
    """Sign in front of the real-root factor for ``gamma = n delta +- alpha``."""
    n, k = gamma
    if k == 1:
        e = n * kind.theta
    elif k == -1:
        e = (n - 1) * kind.theta
    else:
        raise RootError("the phase is defined for real roots n*delta +- alpha only")
    return -1 if e % 2 else 1


def factor_sign(kind: AlgebraKind, gamma) -> int:
    """Sign actually used in ``R+``/``R-``: ``phase_A`` times ``(-1)**theta``.

    With the super-anticommutator ``[e_a, e_-a]`` the leading slice of the
    intertwining identity only cancels for ``-1`` in front of ``e_a (x) e_-a``
    when ``theta = 1``.
    """
    return phase_A(kind, gamma) * kind.phase


def _real_factor(kind: AlgebraKind, gamma: Root, degree: int, phase: Callable) -> TensorExpression:
    h = 2 * gamma.n + gamma.k
    x = TensorExpression(kind, 2, {((RootVector(*gamma),), (RootVector(-gamma.n, -gamma.k),)):
                                   Q_DIFF * Scalar.from_int(phase(kind, gamma))})
    return q_exp(x, q_gamma(kind, gamma).inverse(), degree // h, degree)


@dataclass(frozen=True)
class RFactorization:
    """``R+``, ``R0``, ``R-`` (PBW (x) PBW, truncated) and the formal ``K``."""

    kind: AlgebraKind
    r_plus: TensorExpression
    r_zero: TensorExpression
    r_minus: TensorExpression
    truncation_degree: int
    k_factor: str = "K"

    def product(self) -> TensorExpression:
        """``R+ R0 R-`` without ``K``, normalized leg-wise."""
        return _product(self)

    def full(self) -> TensorExpression:
        return self.product().with_k(1)

    def to_json(self) -> dict:
        return {
            "format": 1,
            "kind": self.kind.name,
            "theta": self.kind.theta,
            "degree": self.truncation_degree,
            "r_plus": self.r_plus.to_json(),
            "r_zero": self.r_zero.to_json(),
            "r_minus": self.r_minus.to_json(),
            "k_factor": self.k_factor,
        }


def _normalized_product(a: TensorExpression, b: TensorExpression, degree: int) -> TensorExpression:
    return _truncate(a * b, degree).normalize("pbw")


@lru_cache(maxsize=None)
def _build(kind: AlgebraKind, degree: int, phase: Callable) -> RFactorization:
    r_plus = TensorExpression.one(kind)
    for n in range(0, (degree - 1) // 2 + 1):
        r_plus = _normalized_product(r_plus, _real_factor(kind, Root(n, 1), degree, phase), degree)
    r_minus = TensorExpression.one(kind)
    for n in range((degree + 1) // 2, 0, -1):
        r_minus = _normalized_product(r_minus, _real_factor(kind, Root(n, -1), degree, phase), degree)
    exponent = TensorExpression.zero(kind)
    for n in range(1, degree // 2 + 1):
        exponent = exponent + TensorExpression(
            kind, 2, {((RootVector(n, 0),), (RootVector(-n, 0),)): Q_DIFF * d_of(n)})
    r_zero = _exp(exponent, degree // 2, degree).normalize("pbw")
    return RFactorization(kind, r_plus, r_zero, r_minus, degree)


def build_r(kind: AlgebraKind, D: int, phase: Callable = factor_sign) -> RFactorization:
    if D < 1:
        raise ValueError("truncation degree must be at least 1")
    return _build(kind, D, phase)


@lru_cache(maxsize=None)
def _product_cached(r: RFactorization) -> TensorExpression:
    d = r.truncation_degree
    return _normalized_product(_normalized_product(r.r_plus, r.r_zero, d), r.r_minus, d)


def _product(r: RFactorization) -> TensorExpression:
    return _product_cached(r)


def k_conjugate(t: TensorExpression) -> TensorExpression:
    """``K t K**-1``; see :func:`qaffine.hopf.conjugate_by_k`."""
    return conjugate_by_k(t)


INTERTWINING_GENERATORS = ("e(a)", "e(-a)", "e(d-a)", "e(-(d-a))",
                           "k(a)", "k(a)^-1", "k(d-a)", "k(d-a)^-1", "k(d)", "k(d)^-1")


def check_intertwining(kind: AlgebraKind, x: Expression, D: int, phase: Callable = factor_sign) -> TensorExpression:
    """``R' (K D(x) K**-1) - D~(x) R'`` with ``R' = R+ R0 R-``.

    Only components of leg-1 height at most ``D - 1`` are returned; those are
    unaffected by the truncation.
    """
    if D < 3:
        raise ValueError("intertwining needs truncation degree D >= 3")
    if len(x.terms) != 1 or len(next(iter(x.terms))) != 1:
        raise ExpressionError("check_intertwining takes a single Chevalley generator")
    r = build_r(kind, D, phase).product()
    left = r * k_conjugate(coproduct(x))
    right = opposite_coproduct(x) * r
    return _truncate(left - right, D - 1).normalize("pbw")


# -- evaluation representation of U_q(A1^(1)) ---------------------------------------
#
# Series in u = z1/z2 (and v = z2/z3) are dicts {exponent tuple: Fraction};
# matrices are lists of rows of such series.

def _mat_zero(n):
    return [[{} for _ in range(n)] for _ in range(n)]


def _mat_identity(n, vars_: int):
    m = _mat_zero(n)
    for i in range(n):
        m[i][i] = {(0,) * vars_: Fraction(1)}
    return m


def _series_mul(a, b, order):
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if sum(e) > order:
                continue
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _series_add(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _mat_mul(a, b, order):
    n = len(a)
    out = _mat_zero(n)
    for i in range(n):
        for k in range(n):
            if not a[i][k]:
                continue
            for j in range(n):
                if b[k][j]:
                    out[i][j] = _series_add(out[i][j], _series_mul(a[i][k], b[k][j], order))
    return out


def _kron(a, b):
    """Kronecker product of plain numeric matrices."""
    n, m = len(a), len(b)
    return [[a[i // m][j // m] * b[i % m][j % m] for j in range(n * m)] for i in range(n * m)]


def _numeric_mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


class _Evaluation:
    """Two-dimensional evaluation module: generator images are ``z**n * M``."""

    def __init__(self, q: Fraction):
        self.q = q
        qi = 1 / q
        self.letters = {
            RootVector(0, 1): [[0, 1], [0, 0]],
            RootVector(0, -1): [[0, 0], [1, 0]],
            RootVector(1, -1): [[0, 0], [1, 0]],
            RootVector(-1, 1): [[0, 1], [0, 0]],
        }
        self.k_alpha = [[q, 0], [0, qi]]
        self.k_beta = [[qi, 0], [0, q]]

    def generator(self, g):
        if isinstance(g, Cartan):
            a = self._diag_power(self.k_alpha, g.a)
            b = self._diag_power(self.k_beta, g.b)
            return _numeric_mat_mul(a, b)  # k_d acts trivially
        return self.letters[RootVector(g.n, g.k)]

    @staticmethod
    def _diag_power(m, e):
        return [[Fraction(m[0][0]) ** e, 0], [0, Fraction(m[1][1]) ** e]]

    def image(self, x: Expression):
        """Numeric matrix ``M`` with ``x -> z**n M`` (``x`` homogeneous in delta)."""
        out = [[Fraction(0), Fraction(0)], [Fraction(0), Fraction(0)]]
        for m, c in x.terms.items():
            mat = [[Fraction(1), 0], [0, Fraction(1)]]
            for g in m:
                mat = _numeric_mat_mul(mat, self.generator(g))
            cv = c.evaluate(self.q)
            out = [[out[i][j] + cv * mat[i][j] for j in range(2)] for i in range(2)]
        return out


def evaluation_representation_check(q_value) -> list[str]:
    """Labels of defining relations violated by the evaluation module (empty when sound).

    ``k_d`` acts on ``z**j v`` as ``q**j``.  A monomial then acts as
    ``q**(j * total k_d power)`` times a ``j``-free operator, so each piece of
    fixed z-degree and total ``k_d`` power is checked at ``j = 0``.
    """
    from .roots import A1_1
    from .tables import defining_relations

    ev = _Evaluation(Fraction(q_value))
    failed = []
    for rel in defining_relations(A1_1):
        x = rel.lhs - rel.rhs
        by_degree: dict = {}
        for m, c in x.terms.items():
            n = monomial_weight(m)[0]
            d = sum(g.d for g in m if isinstance(g, Cartan))
            shift = Fraction(1)
            for pos, g in enumerate(m):
                if isinstance(g, Cartan) and g.d:
                    shift *= ev.q ** (g.d * monomial_weight(m[pos + 1:])[0])
            part = by_degree.get((n, d), Expression.zero(A1_1))
            by_degree[(n, d)] = part + Expression(A1_1, [(m, c * Scalar.from_int(shift))])
        for piece in by_degree.values():
            mat = ev.image(piece)
            if any(v != 0 for row in mat for v in row):
                failed.append(rel.family)
                break
    return failed


def _root_image(ev: _Evaluation, kind: AlgebraKind, n: int, k: int):
    from .cartanweyl import expand_to_chevalley

    g = RootVector(n, k)
    return ev.image(expand_to_chevalley(Expression.generator(kind, g)))


def _r_eval(q: Fraction, order: int):
    """``R(u) K~**-1`` factors as 4x4 matrices over series in one variable ``u``."""
    from .roots import A1_1

    ev = _Evaluation(q)
    kind = A1_1
    qd = q - 1 / q

    def tensor_term(n, k, coeff):
        a = _root_image(ev, kind, n, k)
        b = _root_image(ev, kind, -n, -k)
        m = _kron(a, b)
        return [[({(n,): coeff * v} if v else {}) for v in row] for row in m]

    def add(a, b):
        return [[_series_add(a[i][j], b[i][j]) for j in range(4)] for i in range(4)]

    ident = _mat_identity(4, 1)
    r_plus = ident
    for n in range(0, order + 1):
        x = tensor_term(n, 1, qd * factor_sign(kind, (n, 1)))
        factor = _q_exp_matrix(x, q_gamma(kind, (n, 1)).inverse().evaluate(q), order)
        r_plus = _mat_mul(r_plus, factor, order)
    r_minus = ident
    for n in range(order, 0, -1):
        x = tensor_term(n, -1, qd * factor_sign(kind, (n, -1)))
        factor = _q_exp_matrix(x, q_gamma(kind, (n, -1)).inverse().evaluate(q), order)
        r_minus = _mat_mul(r_minus, factor, order)
    expo = _mat_zero(4)
    for n in range(1, order + 1):
        expo = add(expo, tensor_term(n, 0, qd * d_of(n).evaluate(q)))
    r_zero = ident
    power = ident
    fact = 1
    for n in range(1, order + 1):
        power = _mat_mul(power, expo, order)
        fact *= n
        r_zero = add(r_zero, [[{e: c / fact for e, c in s.items()} for s in row] for row in power])
    out = _mat_mul(_mat_mul(r_plus, r_zero, order), r_minus, order)
    k_tilde = [Fraction(1), 1 / q, 1 / q, Fraction(1)]  # q**(H (x) H / 2) / q**(1/2)
    return [[{e: c * k_tilde[j] for e, c in out[i][j].items()} for j in range(4)] for i in range(4)]


def _q_exp_matrix(x, p: Fraction, order):
    out = _mat_identity(4, 1)
    power = _mat_identity(4, 1)
    fact = Fraction(1)
    for n in range(1, order + 1):
        power = _mat_mul(power, x, order)
        fact *= (p ** n - 1) / (p - 1)
        if fact == 0:
            raise ZeroDivisionError("degenerate q-factorial")
        out = [[_series_add(out[i][j], {e: c / fact for e, c in power[i][j].items()}) for j in range(4)]
               for i in range(4)]
    return out


def _embed(r, pair, order):
    """Place a two-leg matrix over a one-variable series into legs ``pair`` of V (x) V (x) V."""
    i1, i2 = pair
    # the series variable maps to u (legs 1,2), v (legs 2,3) or u*v (legs 1,3)
    var = {(0, 1): (1, 0), (1, 2): (0, 1), (0, 2): (1, 1)}[pair]
    out = _mat_zero(8)
    for row in range(8):
        bits_r = ((row >> 2) & 1, (row >> 1) & 1, row & 1)
        for col in range(8):
            bits_c = ((col >> 2) & 1, (col >> 1) & 1, col & 1)
            spectator = [i for i in range(3) if i not in pair][0]
            if bits_r[spectator] != bits_c[spectator]:
                continue
            a = 2 * bits_r[i1] + bits_r[i2]
            b = 2 * bits_c[i1] + bits_c[i2]
            s = r[a][b]
            if s:
                out[row][col] = {(var[0] * e[0], var[1] * e[0]): c for e, c in s.items()
                                 if e[0] * (var[0] + var[1]) <= order}
    return out


def ybe_check_eval(D_z: int, q_value) -> dict:
    """``R12 R13 R23 - R23 R13 R12`` in the evaluation module, modulo total order ``D_z``.

    Returns the nonzero residual coefficients keyed by ``(row, col, (i, j))``
    for the monomial ``u**i v**j``; an empty dict means the identity holds.
    """
    q = Fraction(q_value)
    if q in (0, 1, -1):
        raise ValueError("q must avoid 0 and +-1")
    if D_z < 1:
        raise ValueError("D_z must be positive")
    failed = evaluation_representation_check(q)
    if failed:
        raise ArithmeticError(f"evaluation module violates {failed}")
    r = _r_eval(q, D_z)
    r12, r13, r23 = (_embed(r, p, D_z) for p in ((0, 1), (0, 2), (1, 2)))
    lhs = _mat_mul(_mat_mul(r12, r13, D_z), r23, D_z)
    rhs = _mat_mul(_mat_mul(r23, r13, D_z), r12, D_z)
    residual = {}
    for i in range(8):
        for j in range(8):
            diff = _series_add(lhs[i][j], {e: -c for e, c in rhs[i][j].items()})
            for e, c in diff.items():
                residual[(i, j, e)] = c
    return residual
