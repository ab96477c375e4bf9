import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qaffine.roots import A1_1, C2_2
from qaffine.scalars import ONE, Q, Scalar
from qaffine.terms import (
    Cartan,
    Expression,
    ExpressionError,
    ParseError,
    RootVector,
    commutator,
    parse_expression,
    weight,
)
from qaffine.terms.pbw import normalize_pbw

from strategies import cartans, chevalley_letters, coefficients, expressions, homogeneous_monomials, imaginary_vectors, kinds, real_vectors

EA = RootVector(0, 1)
EB = RootVector(1, -1)


def gen(kind, g):
    return Expression.generator(kind, g)


def test_unit_and_bilinearity():
    ea, eb = gen(A1_1, EA), gen(A1_1, EB)
    assert ea * Expression.scalar(A1_1) == ea
    assert (ea + eb) * ea == Expression(A1_1, [((EA, EA), 1), ((EB, EA), 1)])


@given(kinds.flatmap(lambda k: st.tuples(*(homogeneous_monomials(k, chevalley_letters | cartans),) * 3)))
def test_product_associative_and_weight_additive(triple):
    x, y, z = triple
    assert (x * y) * z == x * (y * z)
    wx, wy = weight(x), weight(y)
    assert weight(x * y) == (wx[0] + wy[0], wx[1] + wy[1])


def test_commutator_plain_example():
    x = gen(A1_1, EA)
    y = gen(A1_1, RootVector(-1, 1))
    assert commutator(x, y) == x * y - y * x


@given(homogeneous_monomials(A1_1, chevalley_letters))
def test_even_self_commutator_vanishes(x):
    assert commutator(x, x).is_zero()


def test_q_commutator_for_odd_pair():
    x, y = gen(C2_2, EA), gen(C2_2, EB)
    # theta*theta' = 1 and (a, d-a) = -2
    assert commutator(x, y, q_twisted=True) == x * y + (y * x).scale(Scalar.q_power(-2))


def test_q_commutator_needs_homogeneous_arguments():
    with pytest.raises(ExpressionError):
        commutator(gen(A1_1, EA), gen(A1_1, EA) + gen(A1_1, EB), q_twisted=True)


def test_weights():
    assert weight(gen(A1_1, EB)) == (1, -1)
    assert weight(gen(A1_1, Cartan(0, 1, 0)) * gen(A1_1, EA)) == (0, 1)
    assert weight(parse_expression("[e(a), e(d-a)]_q", A1_1)) == (1, 0)
    with pytest.raises(ExpressionError, match=r"\(0, 1\).*\(1, -1\)"):
        weight(gen(A1_1, EA) + gen(A1_1, EB))


def test_kind_mismatch():
    with pytest.raises(ExpressionError):
        gen(A1_1, EA) * gen(C2_2, EA)


def test_no_zero_coefficients_stored():
    x = gen(A1_1, EA)
    assert (x - x).is_zero() and len(x - x) == 0


def test_parse_examples():
    x = parse_expression("e(a)*e(d-a) + q^-2*e(d-a)*e(a)", C2_2)
    assert x == Expression(C2_2, [((EA, EB), 1), ((EB, EA), Scalar.q_power(-2))])
    bracket = parse_expression("[e(a), e(-a)]", A1_1)
    ea, fa = gen(A1_1, EA), gen(A1_1, RootVector(0, -1))
    assert bracket == ea * fa - fa * ea
    assert parse_expression("[e(a), e(-a)]", C2_2) == gen(C2_2, EA) * gen(C2_2, RootVector(0, -1)) + gen(
        C2_2, RootVector(0, -1)
    ) * gen(C2_2, EA)
    assert parse_expression("e(2d+a)", A1_1) == gen(A1_1, RootVector(2, 1))
    assert parse_expression("ep(2d)", A1_1) == gen(A1_1, RootVector(2, 0, "direct", True))
    assert parse_expression("k(a)^-2", A1_1) == gen(A1_1, Cartan(0, -2, 0))
    assert parse_expression("(q - q^-1)/(q + q^-1)*e(a)", A1_1) == gen(A1_1, EA).scale((Q - Q.inverse()) / (Q + Q.inverse()))


@pytest.mark.parametrize("text", ["e(a", "e(3a)", "e(a) +", "x(a)", "e(a)^-1", "[e(a) e(d)]"])
def test_parse_errors(text):
    with pytest.raises((ParseError, ValueError)):
        parse_expression(text, A1_1)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_expression("e(a) * * e(d)", A1_1)
    assert info.value.pos >= 0


letters = chevalley_letters | cartans | real_vectors | imaginary_vectors


@given(kinds.flatmap(lambda k: expressions(k, letters)))
def test_print_parse_roundtrip(x):
    assert parse_expression(str(x), x.kind) == x


@given(kinds.flatmap(lambda k: expressions(k, letters)))
def test_json_roundtrip(x):
    data = json.loads(json.dumps(x.to_json()))
    assert Expression.from_json(data) == x
    assert json.dumps(x.to_json()) == json.dumps(Expression.from_json(data).to_json())


def test_cartan_collapses_in_monomials():
    x = parse_expression("k(a)*k(a)^-1*e(a)", A1_1)
    assert x == gen(A1_1, EA)


def test_scalar_arithmetic_on_expressions():
    x = gen(A1_1, EA)
    assert (x * 2 - x) == x
    assert (x / 2).scale(2) == x
    assert (2 + x) - x == Expression.scalar(A1_1, 2)
