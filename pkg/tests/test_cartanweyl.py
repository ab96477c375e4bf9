from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qaffine.cartanweyl import (
    expand_to_chevalley,
    involution,
    negative_imaginary,
    partitions_by_part,
    root_vector,
    schur_coefficient,
    schur_transform,
)
from qaffine.roots import A1_1, C2_2, RootError
from qaffine.scalars import Q, Scalar, a_const
from qaffine.terms import Cartan, Expression, RootVector, commutator, parse_expression
from qaffine.terms.oracle import is_zero, normalize_chevalley
from qaffine.verify import schur_roundtrip

from oracles import mat, mmul, madd, mscale, represent
from strategies import cartans, chevalley_letters, homogeneous_monomials, kinds

KINDS = [A1_1, C2_2]
kind_ids = lambda k: k.key


def p(text, kind):
    return parse_expression(text, kind)


def test_delta_for_superalgebra():
    assert root_vector(C2_2, (1, 0)) == p("e(a)*e(d-a) + q^-2*e(d-a)*e(a)", C2_2)


def test_delta_plus_alpha():
    e_delta = root_vector(A1_1, (1, 0))
    ea = p("e(a)", A1_1)
    expected = (ea * e_delta - e_delta * ea).scale(a_const().inverse())
    assert root_vector(A1_1, (1, 1)) == expected


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
def test_negative_delta(kind):
    expected = commutator(p("e(-d+a)", kind), p("e(-a)", kind), q_twisted=True, inverse=True)
    assert is_zero(root_vector(kind, (-1, 0)) - expected)


@pytest.mark.parametrize("gamma", [(0, 2), (2, 2), (0, 0), (1, 3)])
def test_non_reduced_roots_rejected(gamma):
    with pytest.raises(RootError):
        root_vector(C2_2, gamma)


def test_evaluation_images_of_root_vectors():
    # E, F standard; e(d-a) -> zF.  [E, zF]_q = z (EF - q^-2 FE) = z diag(1, -q^-2)
    qv, z = Fraction(3, 2), Fraction(5)
    assert represent(root_vector(A1_1, (1, 0)), qv, z) == mat(z, 0, 0, -z / qv**2)
    # e(d+a) = [E, e(d)] / (q + q^-1) = z(-q^-2 - 1)/(q + q^-1) E = -z q^-1 E
    assert represent(root_vector(A1_1, (1, 1)), qv, z) == mat(0, -z / qv, 0, 0)


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
def test_schur_closed_forms(kind):
    assert schur_transform(kind, 1, "prime_from_new") == p("e(d)", kind)
    expected = p("e(2d)", kind) + p("e(d)^2", kind).scale((Q - Q.inverse()) * Scalar.from_int(Fraction(1, 2)) * kind.phase)
    assert schur_transform(kind, 2, "prime_from_new") == expected


def test_schur_rejects_nonpositive():
    with pytest.raises(ValueError):
        schur_transform(A1_1, 0, "prime_from_new")


@pytest.mark.parametrize("n", range(1, 8))
def test_partitions_weighted_sum(n):
    parts = partitions_by_part(n)
    assert all(sum(j * c for j, c in enumerate(ps, start=1)) == n for ps in parts)
    assert len(set(parts)) == len(parts) == [1, 2, 3, 5, 7, 11, 15][n - 1]


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
def test_schur_coefficients_compose_to_identity_at_three(kind):
    # substitute the n <= 3 sums into each other by hand: coefficients on e(d)^3 cancel
    c = lambda parts, direction: schur_coefficient(kind, parts, direction)
    s = c((0, 1), "prime_from_new")
    total = c((3,), "new_from_prime") + c((1, 1), "new_from_prime") * c((2,), "prime_from_new") + c(
        (0, 0, 1), "new_from_prime"
    ) * c((3,), "prime_from_new")
    assert total.is_zero()
    assert s.is_one()


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
@pytest.mark.parametrize("n", range(1, 6))
def test_schur_roundtrip(kind, n):
    back, target = schur_roundtrip(kind, n)
    assert back == target


def test_involution_generator_images():
    ea = p("e(a)", A1_1)
    assert involution(A1_1, "star", ea) == p("e(-a)", A1_1)
    assert involution(A1_1, "omega", ea) == -p("e(-a)", A1_1)
    assert involution(A1_1, "tau", ea) == p("e(d-a)", A1_1)
    assert involution(A1_1, "tau", p("k(d)", A1_1)) == p("k(d)", A1_1)
    assert involution(C2_2, "omega", p("e(-a)", C2_2)) == p("e(a)", C2_2)
    assert involution(A1_1, "star", p("q*k(a)", A1_1)) == p("q^-1*k(a)^-1", A1_1)
    assert involution(A1_1, "tau", p("q*k(a)", A1_1)) == p("q*k(d-a)", A1_1)


def letters(kind):
    return [Expression.generator(kind, g) for g in (RootVector(0, 1), RootVector(1, -1), RootVector(0, -1), RootVector(-1, 1))] + [
        Expression.generator(kind, c) for c in (Cartan(1, 0, 0), Cartan(0, 1, 0), Cartan(0, 0, -1))
    ]


def apply(kind, name, x, times):
    for _ in range(times):
        x = involution(kind, name, x)
    return x


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
def test_involution_orders(kind):
    for x in letters(kind):
        assert apply(kind, "star", x, 2) == x
        assert apply(kind, "tau", x, 2) == x
        assert apply(kind, "omega", x, 4) == x
        assert apply(kind, "ddagger", x, 4) == x


def test_omega_and_ddagger_have_order_four_for_the_superalgebra():
    ea = p("e(a)", C2_2)
    assert apply(C2_2, "omega", ea, 2) == -ea
    assert apply(C2_2, "ddagger", ea, 2) == -ea


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
@pytest.mark.parametrize("name", ["star", "ddagger", "omega"])
def test_tau_commutes(kind, name):
    for x in letters(kind):
        assert involution(kind, "tau", involution(kind, name, x)) == involution(kind, name, involution(kind, "tau", x))


pairs = kinds.flatmap(lambda k: st.tuples(*(homogeneous_monomials(k, chevalley_letters | cartans, 3),) * 2))


@given(pairs)
def test_antiautomorphism_laws(pair):
    x, y = pair
    kind = x.kind
    star = lambda e: involution(kind, "star", e)
    dd = lambda e: involution(kind, "ddagger", e)
    assert star(x * y) == star(y) * star(x)
    sign = -1 if (x.parity() and y.parity()) else 1
    assert dd(x * y) == (dd(y) * dd(x)).scale(sign)


@given(pairs)
def test_tau_and_omega_are_automorphisms(pair):
    x, y = pair
    for name in ("tau", "omega"):
        f = lambda e: involution(x.kind, name, e)
        assert f(x * y) == f(x) * f(y)


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
@pytest.mark.parametrize("n", [1, 2])
def test_negative_imaginary(kind, n):
    x = negative_imaginary(kind, n)
    assert x.weight() == (-n, 0)
    assert involution(kind, "star", x) == root_vector(kind, (n, 0))


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
def test_negative_delta_matches_conjugation(kind):
    assert is_zero(negative_imaginary(kind, 1) - root_vector(kind, (-1, 0)))


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
@pytest.mark.parametrize("gamma", [(1, 1), (1, -1), (2, -1), (1, 0), (2, 0)])
@pytest.mark.parametrize("family", ["direct", "inverse"])
def test_conjugation_covariance(kind, gamma, family):
    x = involution(kind, "star", root_vector(kind, gamma, family))
    assert is_zero(x - root_vector(kind, (-gamma[0], -gamma[1]), family))


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
@pytest.mark.parametrize("n,k,image", [(0, 1, (1, -1)), (1, 1, (2, -1)), (1, -1, (0, 1)), (2, -1, (1, 1)), (1, 0, (1, 0))])
def test_dynkin_exchange(kind, n, k, image):
    x = involution(kind, "tau", root_vector(kind, (n, k), "direct"))
    assert is_zero(x - root_vector(kind, image, "inverse"))


def test_unknown_involution():
    with pytest.raises(ValueError):
        involution(A1_1, "sigma", p("e(a)", A1_1))


def _vectors_up_to(height):
    for n in range(-3, 4):
        for k in (-1, 0, 1):
            if (n, k) != (0, 0) and abs(2 * n + k) <= height and (k or n > 0):
                yield n, k


@pytest.mark.parametrize("kind", [A1_1, C2_2], ids=lambda k: k.key)
@pytest.mark.parametrize("family", ["direct", "inverse"])
def test_reduced_and_free_expansions_agree(kind, family):
    # the oracle keeps root vectors as reduced factors; the free route expands to letter words first
    for n, k in _vectors_up_to(7):
        for primed in ((False, True) if k == 0 else (False,)):
            g = Expression.generator(kind, RootVector(n, k, family, primed))
            assert normalize_chevalley(g, 8) == normalize_chevalley(expand_to_chevalley(g), 8), (n, k, primed)
