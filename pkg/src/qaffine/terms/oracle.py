"""Normal forms in the Chevalley presentation.

Elements are stored in triangular form ``sum c * F * K * E`` where ``F`` is a
word in the lowering generators, ``K`` a Cartan monomial and ``E`` a word in
the raising generators.  ``E * F`` products are straightened with the cross
relations; ``E`` and ``F`` words are reduced with the truncated Serre basis.
This is the independent reference used to check every table-driven result.

Beyond the completion bound, positive elements can still be tested for zero
by :func:`OracleAlgebra.positive_is_zero`, which applies the twisted
derivations coming from ``[x, f_i]`` until the degree drops under the bound.
A nonzero positive element always has a nonzero derivative because the Serre
ideal is the radical of the standard pairing for generic ``q``.
"""
from __future__ import annotations

from functools import lru_cache

from ..roots import AlgebraKind, form
from ..scalars import ONE, QQ_DIFF, ZERO, Scalar
from .completion import LETTER_WEIGHT, DegreeOverflow, SerreBasis, serre_basis
from .expression import Cartan, Expression, ExpressionError, RootVector, cartan_power_shift

__all__ = [
    "OracleAlgebra",
    "oracle_for",
    "normalize_chevalley",
    "DegreeOverflow",
    "DEFAULT_BOUND",
    "PositiveProduct",
    "borel_degree",
    "is_zero",
]

DEFAULT_BOUND = 8
IDENTITY = Cartan(0, 0, 0)
_LETTER_CARTAN = {"a": Cartan(0, 1, 0), "b": Cartan(0, 0, 1)}
_E_LETTERS = {(0, 1): "a", (1, -1): "b"}
_F_LETTERS = {(0, -1): "a", (-1, 1): "b"}
_UNSET = object()


def _f_weight(w: str) -> tuple[int, int]:
    return (-w.count("b"), w.count("b") - w.count("a"))


def _e_weight(w: str) -> tuple[int, int]:
    return (w.count("b"), w.count("a") - w.count("b"))


def _acc(acc: dict, key, c: Scalar) -> None:
    old = acc.get(key)
    if old is None:
        acc[key] = c
    else:
        s = old + c
        if s.is_zero():
            del acc[key]
        else:
            acc[key] = s


class OracleAlgebra:
    """Triangular normal-form arithmetic for one algebra kind."""

    def __init__(self, kind: AlgebraKind, bound: int = DEFAULT_BOUND, use_cache: bool = True):
        self.kind = kind
        self.theta = kind.theta
        self.use_cache = use_cache
        self.basis: SerreBasis = serre_basis(kind.theta, bound, use_cache)
        self._straighten: dict = {}
        self._pform = {x: {y: int(form(LETTER_WEIGHT[x], LETTER_WEIGHT[y])) for y in "ab"} for x in "ab"}

    @property
    def bound(self) -> int:
        return self.basis.degree

    def ensure(self, bound: int) -> None:
        if bound > self.basis.degree:
            self.basis.ensure(bound, self.use_cache)

    # -- signs -------------------------------------------------------------
    def _sign_past(self, word: str) -> int:
        """Sign for moving one odd letter past ``word`` (all letters odd)."""
        return -1 if (self.theta and len(word) % 2) else 1

    # -- straightening -----------------------------------------------------
    def straighten(self, e: str, f: str) -> dict:
        """``E * F`` as ``{(F', K, E'): c}`` with raw (unreduced) words."""
        key = (e, f)
        hit = self._straighten.get(key)
        if hit is not None:
            return hit
        if not e or not f:
            out = {(f, IDENTITY, e): ONE}
            self._straighten[key] = out
            return out
        j, rest = f[0], f[1:]
        out: dict = {}
        # f_j moves to the front
        s = self._sign_past(e)
        for (f2, k2, e2), c in self.straighten(e, rest).items():
            _acc(out, (j + f2, k2, e2), c if s == 1 else -c)
        # contractions e_j f_j -> [h_j]
        kj = _LETTER_CARTAN[j]
        kj_inv = kj.inverse()
        for p, letter in enumerate(e):
            if letter != j:
                continue
            u, v = e[:p], e[p + 1:]
            sign = self._sign_past(v)
            pair = int(form(LETTER_WEIGHT[j], _e_weight(u)))
            c_plus = Scalar.q_power(-pair, sign) * _INV_QQ
            c_minus = Scalar.q_power(pair, -sign) * _INV_QQ
            for (f2, k2, e2), c in self.straighten(u + v, rest).items():
                shift = cartan_power_shift(kj, _f_weight(f2))
                _acc(out, (f2, kj * k2, e2), c * c_plus * Scalar.q_power(shift))
                _acc(out, (f2, kj_inv * k2, e2), c * c_minus * Scalar.q_power(-shift))
        self._straighten[key] = out
        return out

    # -- normal-form arithmetic -------------------------------------------
    def nf_e(self, w: str) -> dict:
        return self.basis.nf_word(w)

    def nf_f(self, w: str) -> dict:
        return self.basis.nf_word(w)

    def reduce(self, raw: dict) -> dict:
        """Normalize ``{(F, K, E): c}`` with arbitrary words."""
        out: dict = {}
        for (f, k, e), c in raw.items():
            if c.is_zero():
                continue
            nf_f = self.nf_f(f)
            nf_e = self.nf_e(e)
            for f2, cf in nf_f.items():
                cf = cf * c
                for e2, ce in nf_e.items():
                    _acc(out, (f2, k, e2), cf * ce)
        return out

    def multiply(self, x: dict, y: dict) -> dict:
        if not any(len(f) > 1 for f, _, _ in y) or not any(e for _, _, e in x):
            return self._multiply(x, y)
        # long E*F straightening explodes before reduction; feed lowering words one reduced letter at a time
        prefixes = {"": x}

        def times_word(f: str) -> dict:
            hit = prefixes.get(f)
            if hit is None:
                hit = prefixes[f] = self._multiply(times_word(f[:-1]), {(f[-1], IDENTITY, ""): ONE})
            return hit

        out: dict = {}
        for (f, k, e), c in y.items():
            for key, v in self._multiply(times_word(f), {("", k, e): c}).items():
                _acc(out, key, v)
        return out

    def _multiply(self, x: dict, y: dict) -> dict:
        raw: dict = {}
        for (f1, k1, e1), c1 in x.items():
            for (f2, k2, e2), c2 in y.items():
                c12 = c1 * c2
                for (f3, k3, e3), c3 in self.straighten(e1, f2).items():
                    shift = cartan_power_shift(k1, _f_weight(f3)) - cartan_power_shift(k2, _e_weight(e3))
                    _acc(raw, (f1 + f3, k1 * k3 * k2, e3 + e2), c12 * c3 * Scalar.q_power(shift))
        return self.reduce(raw)

    def add(self, x: dict, y: dict, cy: Scalar = ONE) -> dict:
        out = dict(x)
        for key, c in y.items():
            _acc(out, key, c * cy)
        return out

    def scale(self, x: dict, c: Scalar) -> dict:
        if c.is_zero():
            return {}
        return {key: v * c for key, v in x.items()}

    def one(self) -> dict:
        return {("", IDENTITY, ""): ONE}

    def letter(self, g) -> dict:
        if isinstance(g, Cartan):
            return {("", g, ""): ONE}
        root = (g.n, g.k)
        if root in _E_LETTERS:
            return {("", IDENTITY, _E_LETTERS[root]): ONE}
        if root in _F_LETTERS:
            return {(_F_LETTERS[root], IDENTITY, ""): ONE}
        raise ExpressionError(f"{g} is not a Chevalley generator")

    # -- conversion --------------------------------------------------------
    def from_expression(self, x: Expression, expand=None) -> dict:
        """Normal form of a free expression.

        ``expand(g)`` supplies the normal form of non-Chevalley generators.
        """
        out: dict = {}
        for m, c in x.terms.items():
            acc = self.one()
            for g in m:
                if isinstance(g, Cartan) or ((g.n, g.k) in _E_LETTERS or (g.n, g.k) in _F_LETTERS) and not g.primed:
                    factor = self.letter(g)
                elif expand is not None:
                    factor = expand(g)
                else:
                    raise ExpressionError(f"no Chevalley expansion available for {g}")
                acc = self.multiply(acc, factor)
                if not acc:
                    break
            for key, v in acc.items():
                _acc(out, key, v * c)
        return out

    def to_expression(self, x: dict) -> Expression:
        terms = []
        for (f, k, e), c in x.items():
            m = tuple(RootVector(0, -1) if ch == "a" else RootVector(-1, 1) for ch in f)
            if not k.is_identity():
                m += (k,)
            m += tuple(RootVector(0, 1) if ch == "a" else RootVector(1, -1) for ch in e)
            terms.append((m, c))
        return Expression(self.kind, terms, "chevalley")

    # -- zero test beyond the bound -----------------------------------------
    def derive(self, vec: dict, i: str) -> dict:
        """Twisted derivation on positive words: the ``k_i**-1`` part of ``[x, f_i]``."""
        raw: dict = {}
        for w, c in vec.items():
            for p, letter in enumerate(w):
                if letter != i:
                    continue
                u, v = w[:p], w[p + 1:]
                sign = self._sign_past(v)
                shift = int(form(LETTER_WEIGHT[i], _e_weight(u)))
                _acc(raw, u + v, c * Scalar.q_power(shift, sign))
        return self.basis.nf(raw)

    def positive_is_zero(self, element: "PositiveProduct", cutoff: int | None = None) -> bool:
        """Exact zero test for a positive element of any degree.

        Elements of degree at most ``cutoff`` (default :data:`DESCENT_CUTOFF`,
        never above the completion bound) are reduced directly; larger ones
        are differentiated first.
        """
        return _positive_is_zero(self, element, min(DESCENT_CUTOFF if cutoff is None else cutoff, self.bound))


# reducing products near the bound dominates descent; a few more derivative levels are cheaper
DESCENT_CUTOFF = 10

_INV_QQ = QQ_DIFF.inverse()


class _Factor:
    """A reduced positive element used as a factor of a product."""

    __slots__ = ("vec", "weight", "degree", "_deriv")

    def __init__(self, vec: dict, weight, degree: int):
        self.vec = vec
        self.weight = weight
        self.degree = degree
        self._deriv: dict = {}

    def derivative(self, algebra: OracleAlgebra, i: str) -> "_Factor":
        hit = self._deriv.get(i)
        if hit is None:
            lw = LETTER_WEIGHT[i]
            w = (self.weight[0] - lw[0], self.weight[1] - lw[1])
            hit = self._deriv[i] = _Factor(algebra.derive(self.vec, i), w, self.degree - 1)
        return hit


class PositiveProduct:
    """Linear combination of products of reduced positive elements."""

    def __init__(self, terms=None):
        self.terms: dict = {}  # tuple of _Factor -> Scalar
        for factors, c in terms or ():
            self.add(tuple(factors), c)

    @staticmethod
    def factor(vec: dict) -> _Factor:
        if not vec:
            return _Factor({}, (0, 0), 0)
        w = next(iter(vec))
        return _Factor(vec, _e_weight(w), len(w))

    def add(self, factors: tuple, c: Scalar) -> None:
        if c.is_zero() or any(not f.vec for f in factors):
            return
        _acc(self.terms, factors, c)

    def degree(self) -> int:
        return max((sum(f.degree for f in fs) for fs in self.terms), default=0)


def _collapse(algebra: OracleAlgebra, element: PositiveProduct) -> dict:
    raw: dict = {}
    for factors, c in element.terms.items():
        words = {"": c}
        for f in factors:
            nxt: dict = {}
            for w, cw in words.items():
                for u, cu in f.vec.items():
                    _acc(nxt, w + u, cw * cu)
            words = nxt
        for w, cw in words.items():
            _acc(raw, w, cw)
    return algebra.basis.nf(raw)


def _positive_is_zero(algebra: OracleAlgebra, element: PositiveProduct, cutoff: int) -> bool:
    if not element.terms:
        return True
    if element.degree() <= cutoff:
        return not _collapse(algebra, element)
    theta = algebra.theta
    for i in "ab":
        li = LETTER_WEIGHT[i]
        nxt = PositiveProduct()
        for factors, c in element.terms.items():
            n = len(factors)
            for j in range(n):
                # sign from the letter passing the later factors, q-power from the earlier ones
                later_parity = sum(f.weight[1] for f in factors[j + 1:]) * theta % 2
                earlier = (sum(f.weight[0] for f in factors[:j]), sum(f.weight[1] for f in factors[:j]))
                coef = Scalar.q_power(int(form(li, earlier)), -1 if later_parity else 1)
                d = factors[j].derivative(algebra, i)
                if d.vec:
                    nxt.add(factors[:j] + (d,) + factors[j + 1:], c * coef)
        if not _positive_is_zero(algebra, nxt, cutoff):
            return False
    return True


_ORACLES: dict = {}


def oracle_for(kind: AlgebraKind, bound: int = DEFAULT_BOUND, use_cache: bool = True) -> OracleAlgebra:
    key = (kind.name, kind.theta)
    alg = _ORACLES.get(key)
    if alg is None:
        alg = _ORACLES[key] = OracleAlgebra(kind, bound, use_cache)
    alg.ensure(bound)
    return alg


def _is_positive(g) -> bool:
    return g.n > 0 or (g.n == 0 and g.k > 0)


def borel_degree(x: Expression) -> int:
    """Largest Chevalley length of the raising or lowering part of any monomial.

    This is the completion bound needed to normalize ``x``: straightening
    never lengthens either half.
    """
    best = 0
    for m in x.terms:
        up = down = 0
        for g in m:
            if isinstance(g, Cartan):
                continue
            if _is_positive(g):
                up += abs(2 * g.n + g.k)
            else:
                down += abs(2 * g.n + g.k)
        best = max(best, up, down)
    return best


def normalize_chevalley(x: Expression, degree_bound: int = DEFAULT_BOUND) -> Expression:
    """Unique normal form of ``x`` modulo the defining relations.

    The raising and the lowering part of every monomial of ``x`` (after
    expanding composite root vectors) must have at most ``degree_bound``
    Chevalley letters each; otherwise :class:`DegreeOverflow`.
    """
    from ..cartanweyl import oracle_expansion

    deg = borel_degree(x)
    if deg > degree_bound:
        raise DegreeOverflow(f"expression needs completion degree {deg} > bound {degree_bound}")
    alg = oracle_for(x.kind, degree_bound)
    nf = alg.from_expression(x, lambda g: oracle_expansion(x.kind, g, degree_bound))
    return alg.to_expression(nf)


def is_zero(x: Expression, bound: int = 14) -> bool:
    """Exact membership of ``x`` in the defining ideal.

    Purely raising elements above :data:`DESCENT_CUTOFF` are decided by
    derivation descent.  Everything else is reduced to normal form, which
    needs ``borel_degree(x) <= bound``; otherwise :class:`DegreeOverflow`.
    """
    from ..cartanweyl import oracle_expansion

    gens = x.generators()
    raising = all(isinstance(g, RootVector) and _is_positive(g) for g in gens)
    degree = borel_degree(x)
    if degree <= bound and not (raising and degree > DESCENT_CUTOFF):
        return normalize_chevalley(x, bound).is_zero()
    if any(isinstance(g, Cartan) for g in gens):
        raise DegreeOverflow("descent needs an element without Cartan factors")
    if not all(_is_positive(g) for g in gens):
        raise DegreeOverflow(f"mixed element of completion degree {borel_degree(x)} exceeds bound {bound}")
    alg = oracle_for(x.kind, bound)
    factors: dict = {}
    element = PositiveProduct()
    for m, c in x.terms.items():
        fs = []
        for g in m:
            f = factors.get(g)
            if f is None:
                if (g.n, g.k) in _E_LETTERS and not g.primed:
                    vec = {_E_LETTERS[(g.n, g.k)]: ONE}
                else:
                    vec = {e: v for (_, _, e), v in oracle_expansion(x.kind, g, bound).items()}
                f = factors[g] = PositiveProduct.factor(vec)
            fs.append(f)
        element.add(_chunk(alg, fs), c)
    return alg.positive_is_zero(element)


def _chunk(algebra: OracleAlgebra, factors: list) -> tuple:
    # fold adjacent factors into reduced blocks of degree <= bound; descent cost grows with the factor count
    out: list = []
    for f in factors:
        if out and out[-1].degree + f.degree <= algebra.bound:
            prev = out.pop()
            raw: dict = {}
            for u, cu in prev.vec.items():
                for v, cv in f.vec.items():
                    _acc(raw, u + v, cu * cv)
            f = PositiveProduct.factor(algebra.basis.nf(raw))
            if not f.vec:
                return (f,)
        out.append(f)
    return tuple(out)
