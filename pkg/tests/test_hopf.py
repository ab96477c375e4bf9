import pytest
from hypothesis import given
from hypothesis import strategies as st

from qaffine.hopf import (
    TensorExpression,
    antipode,
    apply_to_leg,
    chevalley_generators,
    coproduct,
    counit,
    multiply_legs,
    opposite_coproduct,
)
from qaffine.roots import A1_1, C2_2
from qaffine.scalars import ONE, ZERO
from qaffine.tables import defining_relations
from qaffine.terms import Expression, ExpressionError, parse_expression
from qaffine.terms.expression import monomial_parity
from qaffine.terms.oracle import normalize_chevalley

from strategies import cartans, chevalley_letters, homogeneous_monomials, kinds

KINDS = [A1_1, C2_2]
kind_ids = lambda k: k.key


def p(text, kind):
    return parse_expression(text, kind)


def tensor(kind, *legs):
    return TensorExpression.pure(*(p(t, kind) for t in legs))


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
def test_coproduct_on_generators(kind):
    assert coproduct(p("e(a)", kind)) == tensor(kind, "e(a)", "1") + tensor(kind, "k(a)^-1", "e(a)")
    assert coproduct(p("e(-a)", kind)) == tensor(kind, "e(-a)", "k(a)") + tensor(kind, "1", "e(-a)")
    assert coproduct(p("e(d-a)", kind)) == tensor(kind, "e(d-a)", "1") + tensor(kind, "k(d-a)^-1", "e(d-a)")
    assert coproduct(p("k(a)", kind)) == tensor(kind, "k(a)", "k(a)")
    assert coproduct(p("k(d)^-1", kind)) == tensor(kind, "k(d)^-1", "k(d)^-1")


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
def test_coproduct_is_multiplicative(kind):
    x, y = p("e(a)", kind), p("e(-a)", kind)
    assert coproduct(x * y) == coproduct(x) * coproduct(y)


def test_interchange_sign_on_odd_legs():
    # (1 (x) e_a)(e_-a (x) 1) = (-1)^{1*1} e_-a (x) e_a for the superalgebra
    left, right = tensor(C2_2, "1", "e(a)"), tensor(C2_2, "e(-a)", "1")
    assert left * right == -tensor(C2_2, "e(-a)", "e(a)")
    assert tensor(A1_1, "1", "e(a)") * tensor(A1_1, "e(-a)", "1") == tensor(A1_1, "e(-a)", "e(a)")


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
def test_opposite_coproduct(kind):
    assert opposite_coproduct(p("e(a)", kind)) == tensor(kind, "1", "e(a)") + tensor(kind, "e(a)", "k(a)^-1")
    assert opposite_coproduct(p("k(d-a)", kind)) == tensor(kind, "k(d-a)", "k(d-a)")


def test_opposite_coproduct_sign_on_odd_pairs():
    x = p("e(a)*e(-a)", C2_2)
    d, flipped = coproduct(x), opposite_coproduct(x)
    assert flipped == d.flip()
    odd = [key for key in d.terms if all(monomial_parity(C2_2, m) for m in key)]
    assert odd
    for a, b in odd:
        assert flipped.terms[(b, a)] == -d.terms[(a, b)]


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
def test_antipode_values(kind):
    assert antipode(p("e(a)", kind)) == -p("k(a)*e(a)", kind)
    assert antipode(p("e(-a)", kind)) == -p("e(-a)*k(a)^-1", kind)
    assert antipode(p("k(d)", kind)) == p("k(d)^-1", kind)
    assert antipode(Expression.scalar(kind)) == Expression.scalar(kind)


def test_counit_values():
    assert counit(p("e(a)", A1_1)) == ZERO
    assert counit(p("k(a)*k(d-a)", A1_1)) == ONE
    assert counit(p("e(a)*e(-a)", A1_1)) == ZERO
    assert counit(p("3*k(a) + e(a)", A1_1)) == 3 * ONE


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
def test_coassociativity_and_antipode_axiom(kind):
    for g in chevalley_generators(kind):
        d = coproduct(g)
        lhs = apply_to_leg(d, 0, coproduct)
        rhs = apply_to_leg(d, 1, coproduct)
        assert (lhs - rhs).normalize("oracle").is_zero(), str(g)
        unit = Expression.scalar(kind, counit(g))
        for leg in (0, 1):
            assert normalize_chevalley(multiply_legs(d.map_legs(antipode, [leg])) - unit, 8).is_zero()


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
def test_coproduct_respects_relations(kind):
    for rel in defining_relations(kind):
        assert coproduct(rel.lhs - rel.rhs).normalize("oracle").is_zero(), rel.family


def test_coproduct_detects_a_wrong_relation():
    wrong = p("e(a)*e(-a) - e(-a)*e(a)", A1_1)
    assert not coproduct(wrong).normalize("oracle").is_zero()


def test_root_vectors_must_be_expanded():
    with pytest.raises(ExpressionError):
        coproduct(p("e(d+a)", A1_1))


monomial = lambda k: homogeneous_monomials(k, chevalley_letters | cartans, 3)


@st.composite
def tensors(draw, kind):
    n = draw(st.integers(1, 3))
    out = TensorExpression.zero(kind)
    for _ in range(n):
        out = out + TensorExpression.pure(draw(monomial(kind)), draw(monomial(kind)))
    return out


@given(kinds.flatmap(lambda k: st.tuples(tensors(k), tensors(k), tensors(k))))
def test_tensor_product_associative(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)


@given(kinds.flatmap(lambda k: st.tuples(*(monomial(k),) * 4)))
def test_interchange_law(quad):
    a, b, c, d = quad
    sign = -1 if (b.parity() and c.parity()) else 1
    assert TensorExpression.pure(a, b) * TensorExpression.pure(c, d) == TensorExpression.pure(a * c, b * d).scale(sign)


@given(kinds.flatmap(lambda k: st.tuples(monomial(k), monomial(k))))
def test_antipode_graded_antimorphism(pair):
    x, y = pair
    sign = -1 if (x.parity() and y.parity()) else 1
    assert antipode(x * y) == (antipode(y) * antipode(x)).scale(sign)


@given(kinds.flatmap(lambda k: st.tuples(monomial(k), monomial(k))))
def test_coproduct_algebra_map(pair):
    x, y = pair
    assert coproduct(x * y) == coproduct(x) * coproduct(y)


def test_tensor_str_and_json():
    t = coproduct(p("e(a)", A1_1))
    assert str(t) == "(k(a)^-1 (x) e(a)) + (e(a) (x) 1)"
    data = t.to_json()
    assert data["legs"] == 2 and data["k_factor"] == 0 and len(data["terms"]) == 2
