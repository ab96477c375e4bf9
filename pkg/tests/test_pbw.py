import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from qaffine.roots import A1_1, C2_2
from qaffine.scalars import Scalar, a_of
from qaffine.terms import Expression, ExpressionError, make_root_vector, parse_expression
from qaffine.terms.oracle import borel_degree, normalize_chevalley
from qaffine.terms.pbw import family_of, is_pbw_monomial, normalize_pbw

from strategies import kinds

KINDS = [A1_1, C2_2]
SMALL_ROOTS = [(0, 1), (1, -1), (1, 1), (2, -1), (1, 0), (0, -1), (-1, 1), (-1, -1), (-2, 1), (-1, 0)]


def pbw(text, kind):
    return normalize_pbw(parse_expression(text, kind))


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.key)
def test_imaginary_past_simple_root(kind):
    expected = parse_expression("e(a)*e(d)", kind) - parse_expression("e(d+a)", kind).scale(a_of(1))
    assert pbw("e(d)*e(a)", kind) == expected


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.key)
def test_ordered_monomial_is_fixed(kind):
    x = parse_expression("e(a)^2*e(d)", kind)
    assert normalize_pbw(x) == x


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.key)
def test_cartan_moves_left(kind):
    # k e k^-1 = q^2 e, so e k = q^-2 k e
    assert pbw("e(d+a)*k(a)", kind) == parse_expression("k(a)*e(d+a)", kind).scale(Scalar.q_power(-2))
    assert pbw("k(a)*e(d+a)*k(a)^-1", kind) == parse_expression("e(d+a)", kind).scale(Scalar.q_power(2))


def test_mixed_families_rejected():
    with pytest.raises(ExpressionError):
        pbw("e(d+a)*et(d+a)", A1_1)


def monomials(kind, family, max_len):
    return st.lists(st.sampled_from(SMALL_ROOTS), min_size=1, max_size=max_len).map(
        lambda rs: Expression(kind, [(tuple(make_root_vector(r, family) for r in rs), 1)])
    )


@st.composite
def pbw_pairs(draw):
    kind = draw(kinds)
    family = draw(st.sampled_from(["direct", "inverse"]))
    x = normalize_pbw(draw(monomials(kind, family, 2)), family)
    y = normalize_pbw(draw(monomials(kind, family, 2)), family)
    return x, y, family


@given(pbw_pairs())
def test_backends_agree_on_products(pair):
    x, y, family = pair
    product = x * y
    assume(borel_degree(product) <= 8)
    reduced = normalize_pbw(product, family)
    assert normalize_chevalley(product, 8) == normalize_chevalley(reduced, 8)


@given(kinds, st.sampled_from(["direct", "inverse"]), st.data())
def test_terminates_in_ordered_basis(kind, family, data):
    x = data.draw(monomials(kind, family, 5))
    y = normalize_pbw(x, family)
    assert all(is_pbw_monomial(m, family) for m in y.terms)
    assert normalize_pbw(y, family) == y
    if not y.is_zero():
        assert y.weight() == x.weight()
        assert y.parity() == x.parity()


def test_family_detection():
    assert family_of(parse_expression("et(d+a)*e(a)", A1_1)) == "inverse"
    assert family_of(parse_expression("e(a)*e(-a)", A1_1)) == "direct"
    assert is_pbw_monomial(parse_expression("et(d+a)*e(a)", A1_1).items()[0][0], "inverse")
    assert not is_pbw_monomial(parse_expression("e(d+a)*e(a)", A1_1).items()[0][0])


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.key)
def test_primes_are_eliminated(kind):
    y = pbw("ep(2d)", kind)
    # single partitions {2} and {1,1}: e'(2d) = e(2d) + phase (q - q^-1)/2 e(d)^2
    expected = parse_expression("e(2d)", kind) + parse_expression("(q - q^-1)/2*e(d)^2", kind).scale(kind.phase)
    assert y == expected
