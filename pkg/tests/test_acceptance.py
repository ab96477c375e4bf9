"""Acceptance criteria 1-9, one test each.

Every test records a PASS/FAIL line that is printed in the terminal summary
(see ``conftest.py``).  Run on its own with ``pytest tests/test_acceptance.py``.
"""
import time
from fractions import Fraction

import pytest

from qaffine.corpus import load_corpus, unification_report
from qaffine.roots import A1_1, C2_2
from qaffine.verify import Report, run_suite

BOTH = [A1_1, C2_2]


def _summarize(reports: list[Report], started: float) -> tuple[bool, str]:
    passed = all(r.passed for r in reports)
    checks = sum(len(r.checks) for r in reports)
    detail = f"{checks} checks, {time.monotonic() - started:.0f}s"
    if not passed:
        failed = [f"{r.kind}:{c.name}" for r in reports for c in r.checks if not c.passed]
        aborted = [f"{r.kind} aborted: {r.aborted}" for r in reports if r.aborted]
        detail += "; " + "; ".join((failed + aborted)[:5])
    return passed, detail


def _criterion(acceptance, number, title, suite, kinds, options=None):
    started = time.monotonic()
    try:
        reports = run_suite(suite, kinds, options)
    except Exception as exc:
        acceptance(number, title, False, f"{type(exc).__name__}: {exc}")
        raise
    passed, detail = _summarize(reports, started)
    assert acceptance(number, title, passed, detail), detail


def test_criterion_1_defining_relations(acceptance):
    _criterion(acceptance, 1, "defining relations vanish at degree bound 8", "defining", BOTH, {"degree": 8})


def test_criterion_2_cartan_weyl_commutation_tables(acceptance):
    _criterion(acceptance, 2, "real and Cartan commutation tables, n, m <= 2", "props", BOTH,
               {"max_n": 2, "which": "one"})


def test_criterion_3_imaginary_commutation_tables(acceptance):
    _criterion(acceptance, 3, "imaginary-vector tables and pairing, n, m <= 2", "props", BOTH,
               {"max_n": 2, "which": "two"})


def test_criterion_4_schur_transform(acceptance):
    _criterion(acceptance, 4, "Schur transforms inverse for n <= 5, closed forms n = 1, 2", "schur", BOTH,
               {"max_n": 5})


def test_criterion_5_involutions(acceptance):
    _criterion(acceptance, 5, "involution orders, commutation with tau, conjugation, exchange", "involutions",
               BOTH, {"max_n": 3})


def test_criterion_6_hopf_structure(acceptance):
    _criterion(acceptance, 6, "coassociativity, antipode axiom, coproduct of relations", "hopf", BOTH,
               {"degree": 8})


def test_criterion_7_rmatrix_intertwining(acceptance):
    _criterion(acceptance, 7, "universal R-matrix intertwines at truncation 3", "rmatrix", BOTH, {"degree": 3})


def test_criterion_8_yang_baxter(acceptance):
    _criterion(acceptance, 8, "Yang-Baxter through z-order 2 at q = 3/2", "ybe", [A1_1],
               {"order": 2, "q": Fraction(3, 2)})


def test_criterion_9_unification(acceptance):
    started = time.monotonic()
    cases = load_corpus()
    # every case, whatever its size
    results = list(unification_report(cases, degree=10**6))
    passed = all(ok for _, ok, _ in results)
    detail = f"{len(cases)} cases, {time.monotonic() - started:.0f}s"
    if not passed:
        detail += "; " + "; ".join(f"{name}: {info}" for name, ok, info in results if not ok)
    assert acceptance(9, "zeroed-parity run equals A1_1, sign-bearing goldens differ", passed, detail), detail
