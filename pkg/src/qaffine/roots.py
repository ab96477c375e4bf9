"""Root data shared by U_q(A1^(1)) and U_q(C(2)^(2)).

Roots are integer pairs ``(n, k)`` standing for ``n*delta + k*alpha``.  The
two algebras share the bilinear form and the reduced root system; they differ
only through the parity function, carried by :class:`AlgebraKind`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .scalars import Scalar

__all__ = [
    "AlgebraKind",
    "A1_1",
    "C2_2",
    "KINDS",
    "kind_from_name",
    "Root",
    "CartanLabel",
    "RootError",
    "form",
    "is_root",
    "parity",
    "color",
    "q_gamma",
    "height",
    "positive_roots",
    "normal_ordering",
    "root_label",
    "parse_root",
    "ABAR_SYM",
    "ABAR_SYM_INV",
]


class RootError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraKind:
    """Algebra selector.  ``theta`` is the parity of the simple roots."""

    name: str
    theta: int

    def zeroed(self) -> "AlgebraKind":
        """Same algebra tag with the phase factor forced to +1."""
        return AlgebraKind(self.name, 0)

    @property
    def phase(self) -> int:
        return -1 if self.theta else 1

    @property
    def key(self) -> str:
        return f"{self.name}:theta={self.theta}"

    def __str__(self):
        return self.name


A1_1 = AlgebraKind("A1_1", 0)
C2_2 = AlgebraKind("C2_2", 1)
KINDS = (A1_1, C2_2)

_KIND_ALIASES = {
    "a11": A1_1,
    "a1_1": A1_1,
    "A1_1": A1_1,
    "c22": C2_2,
    "c2_2": C2_2,
    "C2_2": C2_2,
}


def kind_from_name(name: str) -> AlgebraKind:
    try:
        return _KIND_ALIASES[name] if name in _KIND_ALIASES else _KIND_ALIASES[name.lower()]
    except KeyError:
        raise RootError(f"unknown algebra kind {name!r} (use a11 or c22)") from None


class Root(NamedTuple):
    n: int
    k: int

    def __neg__(self):
        return Root(-self.n, -self.k)

    def __add__(self, other):
        return Root(self.n + other[0], self.k + other[1])

    @property
    def is_real(self) -> bool:
        return self.k != 0

    @property
    def is_positive(self) -> bool:
        return self.n > 0 or (self.n == 0 and self.k > 0)

    def __str__(self):
        return root_label(self)


class CartanLabel(NamedTuple):
    tag: str  # "d", "alpha" or "delta_minus_alpha"


_LABEL_VECTORS = {
    "d": (1, 0, 0),
    "alpha": (0, 0, 1),
    "delta_minus_alpha": (0, 1, -1),
}

# lattice coordinates are (d, delta, alpha)
_GRAM = ((0, 1, 0), (1, 0, 0), (0, 0, 2))


def _vector(x) -> tuple[int, int, int]:
    if isinstance(x, CartanLabel):
        try:
            return _LABEL_VECTORS[x.tag]
        except KeyError:
            raise RootError(f"unknown Cartan label {x.tag!r}") from None
    if isinstance(x, str):
        return _vector(CartanLabel(x))
    if len(x) == 2:
        return (0, x[0], x[1])
    return tuple(x)


def form(x: Union[Root, CartanLabel, tuple], y: Union[Root, CartanLabel, tuple]) -> Fraction:
    """Symmetric bilinear form; arguments may be roots, Cartan labels or
    ``(d, delta, alpha)`` coordinate triples."""
    u, v = _vector(x), _vector(y)
    total = 0
    for i in range(3):
        for j in range(3):
            total += u[i] * _GRAM[i][j] * v[j]
    return Fraction(total)


# extended symmetric Cartan matrix on the basis (d, delta - alpha, alpha) and its inverse
ABAR_SYM = (
    (Fraction(0), Fraction(1), Fraction(0)),
    (Fraction(1), Fraction(2), Fraction(-2)),
    (Fraction(0), Fraction(-2), Fraction(2)),
)
ABAR_SYM_INV = (
    (Fraction(0), Fraction(1), Fraction(1)),
    (Fraction(1), Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(0), Fraction(1, 2)),
)


def is_root(kind: AlgebraKind, gamma) -> bool:
    n, k = gamma
    if (n, k) == (0, 0):
        return False
    if k in (-1, 0, 1):
        return True
    if kind.name == C2_2.name and k in (-2, 2):
        return n % 2 == 0
    return False


def _check_root(kind: AlgebraKind, gamma) -> Root:
    gamma = Root(*gamma)
    if not is_root(kind, gamma):
        raise RootError(f"{root_label(gamma)} is not a root of {kind.name}")
    return gamma


def parity(kind: AlgebraKind, gamma) -> int:
    gamma = _check_root(kind, gamma)
    return (gamma.k * kind.theta) % 2


def color(kind: AlgebraKind, gamma) -> str:
    """'white' for even roots, 'dark' for odd roots whose double is a root."""
    gamma = _check_root(kind, gamma)
    if parity(kind, gamma) == 0:
        return "white"
    double = Root(2 * gamma.n, 2 * gamma.k)
    return "dark" if is_root(kind, double) else "grey"


def q_gamma(kind: AlgebraKind, gamma) -> Scalar:
    gamma = _check_root(kind, gamma)
    if not gamma.is_real:
        raise RootError(f"q_gamma is only defined for real roots, got {root_label(gamma)}")
    sign = -1 if parity(kind, gamma) else 1
    return Scalar.q_power(int(form(gamma, gamma)), sign)


def height(weight) -> int:
    """Number of simple-root letters in a weight ``n*delta + k*alpha``."""
    n, k = weight
    return 2 * n + k


def positive_roots(kind: AlgebraKind, reduced: bool = True, cutoff: int = 1) -> list[Root]:
    if cutoff < 1:
        raise RootError("cutoff must be >= 1")
    doubles = not reduced and kind.name == C2_2.name
    out = [Root(0, 1)] + ([Root(0, 2)] if doubles else [])
    for n in range(1, cutoff + 1):
        out += [Root(n, -1), Root(n, 0), Root(n, 1)]
        if doubles:
            out += [Root(2 * n, -2), Root(2 * n, 2)]
    return out


def normal_ordering(direction: str = "direct", cutoff: int = 1) -> list[Root]:
    if cutoff < 1:
        raise RootError("cutoff must be >= 1")
    plus = [Root(n, 1) for n in range(0, cutoff + 1)]
    imag = [Root(n, 0) for n in range(1, cutoff + 1)]
    minus = [Root(n, -1) for n in range(1, cutoff + 1)]
    if direction == "direct":
        return plus + imag + minus[::-1]
    if direction == "inverse":
        return minus + imag + plus[::-1]
    raise RootError(f"unknown ordering direction {direction!r}")


def root_label(gamma, ascii: bool = True) -> str:
    """``(2, 1) -> '2d+a'``; negative multiples print with a leading minus."""
    n, k = gamma
    d = "d" if ascii else "δ"
    a = "a" if ascii else "α"
    parts = ""
    if n:
        parts = (f"{n}{d}" if abs(n) != 1 else ("-" if n < 0 else "") + d)
    if k:
        coef = "" if abs(k) == 1 else str(abs(k))
        sign = "-" if k < 0 else ("+" if parts else "")
        parts += f"{sign}{coef}{a}"
    return parts or "0"


_ROOT_TERM = re.compile(r"([+-]?)(\d*)([da])")


def parse_root(text: str) -> Root:
    """Inverse of :func:`root_label`; also accepts ``-(d-a)`` style negation."""
    s = text.replace(" ", "").replace("δ", "d").replace("α", "a")
    if s.startswith("-(") and s.endswith(")"):
        r = parse_root(s[2:-1])
        return -r
    n = k = 0
    pos = 0
    seen = set()
    while pos < len(s):
        m = _ROOT_TERM.match(s, pos)
        if not m or m.end() == pos:
            raise RootError(f"cannot parse root {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        sym = m.group(3)
        if sym in seen:
            raise RootError(f"cannot parse root {text!r}")
        seen.add(sym)
        if sym == "d":
            n = sign * coef
        else:
            k = sign * coef
        pos = m.end()
    if (n, k) == (0, 0):
        raise RootError(f"cannot parse root {text!r}")
    return Root(n, k)
