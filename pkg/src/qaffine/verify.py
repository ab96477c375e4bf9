"""Verification suites shared by the CLI and the acceptance tests.

Every check compares two sides through the Chevalley normal form (or an
exact matrix computation for the evaluation module) and records pass/fail
with timing.  A suite passes iff every check passes.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .cartanweyl import involution, root_vector, schur_transform
from .roots import A1_1, C2_2, AlgebraKind
from .terms.expression import Cartan, Expression, RootVector
from .terms.oracle import DegreeOverflow, borel_degree, is_zero, normalize_chevalley

SUITES = ("defining", "props", "schur", "involutions", "hopf", "rmatrix", "ybe", "unification")

# Families by proposition: the imaginary-vector families form the second one.
PROP_ONE_TAGS = ("cartan", "real", "prime")
PROP_TWO_TAGS = ("imaginary",)


class ResourceLimit(RuntimeError):
    pass


@dataclass
class Check:
    name: str
    passed: bool
    seconds: float
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "seconds": round(self.seconds, 3)}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    suite: str
    kind: str
    checks: list = field(default_factory=list)
    aborted: str = ""

    @property
    def passed(self) -> bool:
        return not self.aborted and all(c.passed for c in self.checks)

    def first_failure(self):
        return next((c for c in self.checks if not c.passed), None)

    def to_json(self) -> dict:
        out = {
            "format": 1,
            "suite": self.suite,
            "kind": self.kind,
            "passed": self.passed,
            "count": len(self.checks),
            "failures": sum(not c.passed for c in self.checks),
            "checks": [c.to_json() for c in self.checks],
        }
        if self.aborted:
            out["aborted"] = self.aborted
        return out

    def text(self) -> str:
        width = max((len(c.name) for c in self.checks), default=0)
        lines = [f"{c.name.ljust(width)}  {'pass' if c.passed else 'FAIL'}  {c.seconds:7.2f}s" for c in self.checks]
        status = "PASS" if self.passed else "FAIL"
        tail = f" (aborted: {self.aborted})" if self.aborted else ""
        lines.append(f"{self.suite} [{self.kind}]: {status} {len(self.checks)} checks{tail}")
        return "\n".join(lines)


class _Runner:
    def __init__(self, suite: str, kind: str, time_limit: float | None):
        self.report = Report(suite, kind)
        self.deadline = None if time_limit is None else time.monotonic() + time_limit

    def check(self, name: str, test: Callable[[], object]) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimit(f"time limit reached before {name}")
        t = time.monotonic()
        try:
            result = test()
        except DegreeOverflow as exc:
            self.report.checks.append(Check(name, False, time.monotonic() - t, f"degree overflow: {exc}"))
            return
        if isinstance(result, tuple):
            ok, detail = result
        else:
            ok, detail = bool(result), ""
        self.report.checks.append(Check(name, ok, time.monotonic() - t, detail))

    def run(self, body: Callable[["_Runner"], None]) -> Report:
        try:
            body(self)
        except ResourceLimit as exc:
            self.report.aborted = str(exc)
        return self.report


def _zero(x: Expression, bound: int = 14):
    # root vectors enter the oracle as whole reduced factors; pre-expanding to letters is far slower
    if is_zero(x, bound):
        return True
    if borel_degree(x) <= bound:
        return False, f"normal form {normalize_chevalley(x, bound)}"
    return False, "nonzero (derivation test)"


def _gen(kind, n, k, family="direct", primed=False) -> Expression:
    return Expression.generator(kind, RootVector(n, k, family, primed))


def chevalley_letters(kind: AlgebraKind) -> list[Expression]:
    from .hopf import chevalley_generators

    return chevalley_generators(kind)


# -- suites -------------------------------------------------------------------------

def suite_defining(kind: AlgebraKind, bound: int = 8, time_limit=None) -> Report:
    from .tables import defining_relations
    from .terms.oracle import normalize_chevalley

    def body(r):
        for rel in defining_relations(kind):
            r.check(rel.family, lambda rel=rel: normalize_chevalley(rel.lhs - rel.rhs, bound).is_zero())

    return _Runner("defining", kind.key, time_limit).run(body)


def _families(tags) -> list[str]:
    from .tables import FAMILIES

    return [name for name, fam in FAMILIES.items() if set(fam.tags) & set(tags)]


def suite_props(kind: AlgebraKind, max_n: int = 2, which: str = "both", time_limit=None) -> Report:
    """Commutation tables instantiated for all admissible parameters up to ``max_n``."""
    from .tables import instances

    tags = {"one": PROP_ONE_TAGS, "two": PROP_TWO_TAGS, "both": PROP_ONE_TAGS + PROP_TWO_TAGS}[which]

    def body(r):
        for rel in instances(kind, max_n, _families(tags)):
            r.check(rel.label, lambda rel=rel: _zero(rel.lhs - rel.rhs))

    return _Runner("props", kind.key, time_limit).run(body)


def _sorted_commuting(x: Expression) -> Expression:
    """Sort generators inside monomials; valid only for pairwise commuting letters."""
    from .terms.expression import gen_key

    return Expression(x.kind, [(tuple(sorted(m, key=gen_key)), c) for m, c in x.terms.items()])


def _substitute(x: Expression, image: Callable) -> Expression:
    out = Expression.zero(x.kind)
    for m, c in x.terms.items():
        term = Expression.scalar(x.kind, c)
        for g in m:
            term = term * image(g)
        out = out + term
    return out


def schur_roundtrip(kind: AlgebraKind, n: int) -> tuple[Expression, Expression]:
    """``(new -> prime -> new) - e_n`` and ``(prime -> new -> prime) - e'_n``, both sorted."""
    new_in_primes = {j: schur_transform(kind, j, "new_from_prime") for j in range(1, n + 1)}
    primes_in_new = {j: schur_transform(kind, j, "prime_from_new") for j in range(1, n + 1)}
    to_new = _substitute(new_in_primes[n], lambda g: primes_in_new[g.n])
    to_prime = _substitute(primes_in_new[n], lambda g: new_in_primes[g.n])
    return (_sorted_commuting(to_new - _gen(kind, n, 0)),
            _sorted_commuting(to_prime - _gen(kind, n, 0, primed=True)))


def suite_schur(kind: AlgebraKind, max_n: int = 5, oracle_n: int = 3, time_limit=None) -> Report:
    from .scalars import Q

    def body(r):
        for n in range(1, max_n + 1):
            r.check(f"roundtrip n={n}", lambda n=n: all(x.is_zero() for x in schur_roundtrip(kind, n)))
        # closed forms from the partition sum
        r.check("closed form n=1", lambda: (schur_transform(kind, 1, "prime_from_new") - _gen(kind, 1, 0)).is_zero())
        two = _gen(kind, 2, 0) + (_gen(kind, 1, 0) ** 2).scale((Q - Q.inverse()) * Fraction(kind.phase, 2))
        r.check("closed form n=2", lambda: _sorted_commuting(schur_transform(kind, 2, "prime_from_new") - two).is_zero())
        # the expansion agrees with the primed vectors built as q-brackets
        for n in range(1, oracle_n + 1):
            r.check(f"oracle prime_from_new n={n}",
                    lambda n=n: _zero(_gen(kind, n, 0, primed=True) - schur_transform(kind, n, "prime_from_new")))
        for n in range(1, min(oracle_n, 2) + 1):
            for m in range(1, min(oracle_n, 2) + 1):
                if n < m:
                    r.check(f"oracle new vectors commute n={n},m={m}",
                            lambda n=n, m=m: _zero(_gen(kind, n, 0) * _gen(kind, m, 0) - _gen(kind, m, 0) * _gen(kind, n, 0)))

    return _Runner("schur", kind.key, time_limit).run(body)


def _apply(kind, name, x, times=1):
    for _ in range(times):
        x = involution(kind, name, x)
    return x


def _reduced_roots(max_n: int):
    for n in range(-max_n, max_n + 1):
        for k in (1, -1):
            yield n, k, False
        if n:
            yield n, 0, True
            yield n, 0, False


def suite_involutions(kind: AlgebraKind, max_n: int = 3, tau_n: int = 2, time_limit=None) -> Report:
    orders = {"star": 2, "tau": 2, "omega": 4, "ddagger": 4}

    def body(r):
        gens = chevalley_letters(kind)
        for name, order in orders.items():
            r.check(f"{name}^{order} = id",
                    lambda name=name, order=order: all((_apply(kind, name, g, order) - g).is_zero() for g in gens))
        for name in ("star", "ddagger", "omega"):
            r.check(f"tau commutes with {name}", lambda name=name: all(
                (_apply(kind, "tau", _apply(kind, name, g)) - _apply(kind, name, _apply(kind, "tau", g))).is_zero()
                for g in gens))
        for n, k, primed in _reduced_roots(max_n):
            if abs(2 * n + k) > 2 * max_n + 1 or (n, k) == (0, 0):
                continue
            label = f"star e{'p' if primed else ''}({n},{k})"
            r.check(label, lambda n=n, k=k, primed=primed: _zero(
                _apply(kind, "star", root_vector(kind, (n, k), "direct", primed))
                - root_vector(kind, (-n, -k), "direct", primed)))
        for n in range(-tau_n, tau_n + 1):
            for family, other in (("direct", "inverse"), ("inverse", "direct")):
                for k, shift in ((1, 1), (-1, -1)):
                    image = (n + shift, -k)
                    r.check(f"tau {family} ({n},{k})", lambda n=n, k=k, family=family, other=other, image=image: _zero(
                        _apply(kind, "tau", root_vector(kind, (n, k), family)) - root_vector(kind, image, other)))
                if n:
                    for primed in (True, False):
                        r.check(f"tau {family} {'primed ' if primed else ''}({n},0)",
                                lambda n=n, family=family, other=other, primed=primed: _zero(
                                    _apply(kind, "tau", root_vector(kind, (n, 0), family, primed))
                                    - root_vector(kind, (n, 0), other, primed)))

    return _Runner("involutions", kind.key, time_limit).run(body)


def suite_hopf(kind: AlgebraKind, bound: int = 8, time_limit=None) -> Report:
    from .hopf import antipode, apply_to_leg, coproduct, counit, multiply_legs
    from .tables import defining_relations
    from .terms.oracle import normalize_chevalley
    from .terms.printer import format_expression

    def body(r):
        for g in chevalley_letters(kind):
            name = format_expression(g)
            d = coproduct(g)
            r.check(f"coassociativity {name}",
                    lambda d=d: (apply_to_leg(d, 0, coproduct) - apply_to_leg(d, 1, coproduct)).normalize("oracle", bound).is_zero())
            one = Expression.scalar(kind, counit(g))
            for leg in (0, 1):
                r.check(f"antipode axiom leg {leg + 1} {name}", lambda d=d, one=one, leg=leg: normalize_chevalley(
                    multiply_legs(d.map_legs(antipode, [leg])) - one, bound).is_zero())
        for rel in defining_relations(kind):
            r.check(f"coproduct of {rel.family}",
                    lambda rel=rel: coproduct(rel.lhs - rel.rhs).normalize("oracle", bound).is_zero())

    return _Runner("hopf", kind.key, time_limit).run(body)


def suite_rmatrix(kind: AlgebraKind, degree: int = 3, time_limit=None) -> Report:
    from .rmatrix import INTERTWINING_GENERATORS, check_intertwining
    from .terms.parser import parse_expression

    def body(r):
        for text in INTERTWINING_GENERATORS:
            def test(text=text):
                res = check_intertwining(kind, parse_expression(text, kind), degree)
                return res.is_zero(), "" if res.is_zero() else f"residual {str(res)[:400]}"

            r.check(f"intertwining {text} D={degree}", test)

    return _Runner("rmatrix", kind.key, time_limit).run(body)


def suite_ybe(order: int = 2, q_value=Fraction(3, 2), time_limit=None) -> Report:
    from .rmatrix import evaluation_representation_check, ybe_check_eval

    def body(r):
        r.check("evaluation module satisfies the defining relations",
                lambda: (not evaluation_representation_check(q_value), ""))
        for d in range(1, order + 1):
            def test(d=d):
                res = ybe_check_eval(d, q_value)
                return not res, "" if not res else f"{len(res)} nonzero coefficients"

            r.check(f"Yang-Baxter order {d} at q={q_value}", test)

    return _Runner("ybe", "a11", time_limit).run(body)


def suite_unification(degree: int = 6, time_limit=None) -> Report:
    from .corpus import load_corpus, unification_report

    def body(r):
        cases = load_corpus()
        for name, ok, detail in unification_report(cases, degree):
            r.check(name, lambda ok=ok, detail=detail: (ok, detail))

    return _Runner("unification", "both", time_limit).run(body)


def kinds_for(name: str) -> list[AlgebraKind]:
    from .roots import kind_from_name

    if name == "both":
        return [A1_1, C2_2]
    return [kind_from_name(name)]


def run_suite(name: str, kinds: Iterable[AlgebraKind], options: dict | None = None) -> list[Report]:
    o = dict(options or {})
    limit = o.pop("time_limit", None)
    if name == "ybe":
        return [suite_ybe(o.get("order", 2), Fraction(o.get("q", Fraction(3, 2))), limit)]
    if name == "unification":
        return [suite_unification(o.get("degree", 6), limit)]
    runners = {
        "defining": lambda k: suite_defining(k, o.get("degree", 8), limit),
        "props": lambda k: suite_props(k, o.get("max_n", 2), o.get("which", "both"), limit),
        "schur": lambda k: suite_schur(k, o.get("max_n", 5), time_limit=limit),
        "involutions": lambda k: suite_involutions(k, o.get("max_n", 3), time_limit=limit),
        "hopf": lambda k: suite_hopf(k, o.get("degree", 8), limit),
        "rmatrix": lambda k: suite_rmatrix(k, o.get("degree", 3), limit),
    }
    if name not in runners:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")
    return [runners[name](k) for k in kinds]
