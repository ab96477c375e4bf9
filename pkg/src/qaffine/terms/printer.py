"""Deterministic text form of expressions (round-trips through the parser)."""
from __future__ import annotations

from ..roots import root_label
from ..scalars import Scalar
from .expression import Cartan, RootVector

_CARTAN_NAMES = (("d", "k(d)"), ("a", "k(a)"), ("b", "k(d-a)"))


def format_generator(g: RootVector) -> str:
    head = "e"
    if g.family == "inverse":
        head = "et"
    if g.primed:
        head += "p"
    return f"{head}({root_label((g.n, g.k))})"


def _power(token: str, p: int) -> str:
    return token if p == 1 else f"{token}^{p}"


def format_cartan_parts(c: Cartan) -> list[str]:
    out = []
    for field, name in _CARTAN_NAMES:
        p = getattr(c, field)
        if p:
            out.append(_power(name, p))
    return out


def format_monomial_parts(m: tuple) -> list[str]:
    parts: list[str] = []
    i = 0
    while i < len(m):
        g = m[i]
        if isinstance(g, Cartan):
            parts += format_cartan_parts(g)
            i += 1
            continue
        j = i
        while j < len(m) and m[j] == g:
            j += 1
        parts.append(_power(format_generator(g), j - i))
        i = j
    return parts


def format_monomial(m: tuple) -> str:
    return "*".join(format_monomial_parts(m)) or "1"


def _is_simple(c: Scalar) -> bool:
    return c.is_monomial()


def _format_coefficient(c: Scalar):
    """Return ``(sign, text)``; ``text`` is '' for a unit coefficient."""
    if c.is_monomial():
        (e, v), = c.laurent_terms("num")
        sign = "-" if v < 0 else "+"
        v = abs(v)
        if e == 0:
            return sign, "" if v == 1 else str(v)
        qpart = "q" if e == 1 else f"q^{e}"
        return sign, qpart if v == 1 else f"{v}*{qpart}"
    return "+", f"({c})"


def format_expression(x) -> str:
    pieces = []
    for m, c in x.items():
        sign, coef = _format_coefficient(c)
        if not m:
            body = coef or "1"
        else:
            mono = format_monomial(m)
            body = f"{coef}*{mono}" if coef else mono
        pieces.append((sign, body))
    if not pieces:
        return "0"
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
