import json

import pytest

from qaffine.corpus import (
    CORPUS_FIELDS,
    CorpusError,
    GoldenCase,
    compute,
    load_corpus,
    run_corpus,
    unification_report,
)
from qaffine.roots import A1_1, C2_2
from qaffine.terms import parse_expression
from qaffine.terms.printer import format_expression

GOOD = {
    "id": "antipode-e-a-a11",
    "kind": "a11",
    "op": "antipode",
    "input": {"expr": "e(a)"},
    "expected": "-k(a)*e(a)",
    "anchor": "antipode on generators",
}


def write_lines(path, rows):
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
    return path


def test_loader_accepts_minimal_case(tmp_path):
    (case,) = load_corpus(write_lines(tmp_path / "c.jsonl", [GOOD]))
    assert case.algebra() is A1_1 and not case.sign_bearing
    assert set(case.to_json()) == set(CORPUS_FIELDS)


@pytest.mark.parametrize("change, message", [
    ({"colour": "red"}, "unknown fields"),
    ({"kind": "b33"}, "unknown kind"),
    ({"op": "integrate"}, "unknown op"),
    ({"anchor": ""}, "empty anchor"),
])
def test_loader_rejects_malformed_cases(tmp_path, change, message):
    path = write_lines(tmp_path / "c.jsonl", [GOOD, dict(GOOD, id="other", **change)])
    with pytest.raises(CorpusError, match=f"line 2: {message}"):
        load_corpus(path)


def test_loader_rejects_missing_field_duplicate_and_bad_json(tmp_path):
    missing = {k: v for k, v in GOOD.items() if k != "expected"}
    with pytest.raises(CorpusError, match="missing fields"):
        load_corpus(write_lines(tmp_path / "a.jsonl", [missing]))
    with pytest.raises(CorpusError, match="duplicate id"):
        load_corpus(write_lines(tmp_path / "b.jsonl", [GOOD, GOOD]))
    (tmp_path / "c.jsonl").write_text('{"id": \n')
    with pytest.raises(CorpusError, match="line 1"):
        load_corpus(tmp_path / "c.jsonl")


def test_run_reports_mismatches(tmp_path):
    wrong = dict(GOOD, id="antipode-wrong-a11", expected="k(a)*e(a)")
    results = run_corpus(load_corpus(write_lines(tmp_path / "c.jsonl", [GOOD, wrong])))
    assert [r.passed for r in results] == [True, False]
    assert results[1].actual == "-k(a)*e(a)"


def test_compute_unknown_op():
    with pytest.raises(CorpusError):
        compute("integrate", {}, A1_1)


@pytest.fixture(scope="module")
def corpus():
    return load_corpus()


def test_packaged_corpus_covers_every_op_and_both_kinds(corpus):
    assert {c.op for c in corpus} == {"relation", "nf", "schur", "involution", "coproduct", "antipode",
                                      "rmatrix", "rootvec"}
    assert {c.kind for c in corpus} == {"a11", "c22"}
    assert all(c.anchor for c in corpus)
    assert all(c.sign for c in corpus if c.sign_bearing)


def test_packaged_corpus_has_no_sign_bearing_a11_cases(corpus):
    assert not any(c.sign_bearing for c in corpus if c.kind == "a11")


def test_tag_filter(corpus):
    tagged = [c for c in corpus if c.tags]
    tag = tagged[0].tags[0]
    assert load_corpus(tags=[tag]) == [c for c in corpus if tag in c.tags]


def test_expression_outputs_round_trip_through_the_parser(corpus):
    for c in corpus:
        if c.op in ("relation", "nf", "schur", "involution", "antipode") and c.expected != "0":
            x = parse_expression(c.expected, c.algebra())
            assert format_expression(x) == c.expected, c.id


@pytest.mark.slow
def test_packaged_corpus_reproduces(corpus):
    failures = [r.case.id for r in run_corpus(corpus) if not r.passed]
    assert not failures


@pytest.mark.slow
def test_unification_report_passes(corpus):
    results = list(unification_report(corpus))
    assert len(results) == 4
    assert all(ok for _, ok, _ in results), results


def test_unification_detects_a_wrong_sign_flag(corpus):
    pair = [c for c in corpus if c.op == "antipode" and c.kind == "c22" and c.sign_bearing][:1]
    assert pair, "corpus needs a sign-bearing antipode case"
    base = pair[0].id.rsplit("-", 1)[0]
    cases = [c for c in corpus if c.id.rsplit("-", 1)[0] == base]
    flipped = [GoldenCase(**dict(c.to_json(), sign_bearing=False)) if c.kind == "c22" else c for c in cases]
    names = {name: ok for name, ok, _ in unification_report(flipped)}
    assert names["zeroed parity reproduces A1_1"]
    assert not names["outputs differ exactly on sign-bearing cases"]
