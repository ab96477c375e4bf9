"""Truncated noncommutative Groebner basis of the Serre ideal.

The positive (and, through the letter isomorphism ``e_i -> f_i``, the
negative) Borel part is the free algebra on two letters modulo the two
q-Serre elements.  Words are strings over ``"a"`` (``alpha``) and ``"b"``
(``delta - alpha``), ordered degree-lexicographically with ``a < b``.

Completion runs degree by degree and stops at a bound; the basis is complete
for every degree up to the bound because all relations are homogeneous.
Finished bases are persisted as JSON under the cache directory.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from ..roots import form
from ..scalars import ONE, ZERO, Scalar

log = logging.getLogger(__name__)

__all__ = [
    "DegreeOverflow",
    "SerreBasis",
    "serre_basis",
    "LETTER_WEIGHT",
    "word_weight",
    "cache_dir",
]

LETTER_WEIGHT = {"a": (0, 1), "b": (1, -1)}
_FORMAT_VERSION = 2


class DegreeOverflow(RuntimeError):
    """A computation needed a word longer than the completion bound."""


def cache_dir() -> Path:
    env = os.environ.get("QAFFINE_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "qaffine"


def word_weight(w: str) -> tuple[int, int]:
    k = w.count("a") - w.count("b")
    return (w.count("b"), k)


def _add_into(acc: dict, vec: dict, c: Scalar) -> None:
    for w, v in vec.items():
        x = v * c
        old = acc.get(w)
        if old is None:
            acc[w] = x
        else:
            s = old + x
            if s.is_zero():
                del acc[w]
            else:
                acc[w] = s


class SerreBasis:
    """Rewrite rules ``leading word -> tail`` for one parity value."""

    def __init__(self, theta: int):
        self.theta = theta
        self.rules: dict[str, dict[str, Scalar]] = {}
        self.degree = 0
        self._lengths: list[int] = []
        self._memo: dict[str, dict[str, Scalar]] = {}

    # -- relations ---------------------------------------------------------
    def _bracket(self, x: dict, wx, y: dict, wy) -> dict:
        """q-super-commutator of two homogeneous free-algebra elements."""
        px = (wx[1] * self.theta) % 2
        py = (wy[1] * self.theta) % 2
        c = Scalar.q_power(int(form(wx, wy)), -1 if (px and py) else 1)
        out: dict = {}
        for u, cu in x.items():
            for v, cv in y.items():
                _add_into(out, {u + v: cu * cv}, ONE)
                _add_into(out, {v + u: cu * cv}, -c)
        return out

    def generators(self) -> list[dict]:
        a, b = {"a": ONE}, {"b": ONE}
        wa, wb = LETTER_WEIGHT["a"], LETTER_WEIGHT["b"]
        ab = self._bracket(a, wa, b, wb)
        wab = (wa[0] + wb[0], wa[1] + wb[1])
        aab = self._bracket(a, wa, ab, wab)
        waab = (wab[0] + wa[0], wab[1] + wa[1])
        s1 = self._bracket(a, wa, aab, waab)
        abb = self._bracket(ab, wab, b, wb)
        wabb = (wab[0] + wb[0], wab[1] + wb[1])
        s2 = self._bracket(abb, wabb, b, wb)
        return [s1, s2]

    def ruleset_hash(self) -> str:
        text = json.dumps(
            {
                "v": _FORMAT_VERSION,
                "theta": self.theta,
                "order": "deglex a<b",
                "generators": [
                    sorted((w, str(c)) for w, c in g.items()) for g in self.generators()
                ],
            },
            sort_keys=True,
        )
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    # -- reduction ---------------------------------------------------------
    def _reducible_suffix(self, w: str):
        for n in self._lengths:
            if n <= len(w):
                lw = w[len(w) - n:]
                if lw in self.rules:
                    return lw
        return None

    def nf_word(self, w: str) -> dict[str, Scalar]:
        memo = self._memo
        hit = memo.get(w)
        if hit is not None:
            return hit
        if len(w) > self.degree:
            raise DegreeOverflow(f"word of length {len(w)} exceeds completion bound {self.degree}")
        if len(w) <= 1:
            out = {w: ONE}
            memo[w] = out
            return out
        prefix = self.nf_word(w[:-1])
        last = w[-1]
        out: dict = {}
        rules = self.rules
        for s, c in prefix.items():
            x = s + last
            lw = self._reducible_suffix(x)
            if lw is None:
                old = out.get(x)
                if old is None:
                    out[x] = c
                else:
                    t = old + c
                    if t.is_zero():
                        del out[x]
                    else:
                        out[x] = t
                continue
            head = x[: len(x) - len(lw)]
            for t, ct in rules[lw].items():
                _add_into(out, self.nf_word(head + t), c * ct)
        memo[w] = out
        return out

    def nf(self, vec: dict) -> dict[str, Scalar]:
        out: dict = {}
        for w, c in vec.items():
            if not c.is_zero():
                _add_into(out, self.nf_word(w), c)
        return out

    def is_standard(self, w: str) -> bool:
        return not any(w[i:i + n] in self.rules for n in self._lengths for i in range(len(w) - n + 1))

    # -- completion --------------------------------------------------------
    def _add_rule(self, vec: dict) -> None:
        lw = max(vec)
        c = vec[lw]
        inv = -(c.inverse())
        tail = {w: v * inv for w, v in vec.items() if w != lw}
        self.rules[lw] = tail
        self._lengths = sorted({len(k) for k in self.rules})
        for w in [w for w in self._memo if len(w) >= len(lw)]:
            del self._memo[w]

    def _candidates(self, d: int, gens: list[dict]) -> list[dict]:
        cands = [g for g in gens if len(next(iter(g))) == d]
        rules = list(self.rules.items())
        for l1, t1 in rules:
            for l2, t2 in rules:
                o = len(l1) + len(l2) - d
                if o < 1 or o >= len(l1) or o >= len(l2):
                    continue
                if l1[-o:] != l2[:o]:
                    continue
                right = l2[o:]
                left = l1[:-o]
                s: dict = {}
                _add_into(s, {t + right: v for t, v in t1.items()}, ONE)
                _add_into(s, {left + t: v for t, v in t2.items()}, -ONE)
                cands.append(s)
        return cands

    def complete(self, bound: int) -> None:
        if bound <= self.degree:
            return
        gens = self.generators()
        for d in range(self.degree + 1, bound + 1):
            self.degree = d
            for w in [w for w in self._memo if len(w) >= d]:
                del self._memo[w]
            added = []
            for cand in self._candidates(d, gens):
                r = self.nf(cand)
                if r:
                    self._add_rule(r)
                    added.append(max(r))
            # interreduce the tails of this degree's rules
            for lw in added:
                tail = self.rules[lw]
                self.rules[lw] = self.nf(tail)
                for w in [w for w in self._memo if len(w) >= d]:
                    del self._memo[w]
            log.debug("degree %d: %d new rules, %d total", d, len(added), len(self.rules))

    # -- persistence -------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "format": _FORMAT_VERSION,
            "theta": self.theta,
            "ruleset": self.ruleset_hash(),
            "degree": self.degree,
            "rules": {
                lw: [[w, c.to_json()] for w, c in sorted(t.items())] for lw, t in sorted(self.rules.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "SerreBasis":
        out = cls(int(data["theta"]))
        if data.get("ruleset") != out.ruleset_hash():
            raise ValueError("cached rules were built from a different relation set")
        out.degree = int(data["degree"])
        out.rules = {lw: {w: Scalar.from_json(c) for w, c in t} for lw, t in data["rules"].items()}
        out._lengths = sorted({len(k) for k in out.rules})
        return out

    def _path(self) -> Path:
        return cache_dir() / f"serre-theta{self.theta}-{self.ruleset_hash()}.json"

    def load_cached(self, bound: int) -> bool:
        path = self._path()
        try:
            data = json.loads(path.read_text())
            loaded = SerreBasis.from_json(data)
        except (OSError, ValueError, KeyError):
            return False
        if loaded.degree < self.degree:
            return False
        # rules above the requested bound are kept; they never fire on shorter words
        self.rules, self.degree = loaded.rules, loaded.degree
        self._lengths = loaded._lengths
        self._memo.clear()
        return loaded.degree >= bound

    def save(self) -> None:
        path = self._path()
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            try:
                old = json.loads(path.read_text())
                if int(old.get("degree", 0)) >= self.degree:
                    return
            except (OSError, ValueError):
                pass
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(self.to_json(), fh)
            os.replace(tmp, path)
        except OSError as exc:
            log.warning("could not persist completion cache: %s", exc)

    def ensure(self, bound: int, use_cache: bool = True) -> None:
        if bound <= self.degree:
            return
        if use_cache and self.load_cached(bound):
            return
        self.complete(bound)
        if use_cache:
            self.save()


_BASES: dict[int, SerreBasis] = {}


def serre_basis(theta: int, bound: int, use_cache: bool = True) -> SerreBasis:
    basis = _BASES.get(theta)
    if basis is None:
        basis = _BASES[theta] = SerreBasis(theta)
    basis.ensure(bound, use_cache)
    return basis
