from fractions import Fraction

import pytest

import qaffine.rmatrix as rm
from qaffine.hopf import TensorExpression
from qaffine.rmatrix import (
    INTERTWINING_GENERATORS,
    build_r,
    check_intertwining,
    evaluation_representation_check,
    factor_sign,
    k_conjugate,
    leg_height,
    phase_A,
    q_exp,
    ybe_check_eval,
)
from qaffine.roots import A1_1, C2_2, RootError
from qaffine.scalars import ONE, Q, Scalar, d_of
from qaffine.terms import parse_expression
from qaffine.terms.expression import monomial_weight

KINDS = [A1_1, C2_2]
kind_ids = lambda k: k.key
Q_DIFF = Q - Q.inverse()


def tensor(kind, a, b):
    return TensorExpression.pure(parse_expression(a, kind), parse_expression(b, kind))


def test_q_exp_partial_sums():
    x = tensor(A1_1, "e(a)", "e(-a)")
    one = TensorExpression.one(A1_1)
    assert q_exp(x, Q, 0) == one
    assert q_exp(x, Q, 1) == one + x
    assert q_exp(x, Q, 2) == one + x + (x * x).scale((Q + 1).inverse())


def test_q_exp_rejects_degenerate_base():
    x = tensor(A1_1, "e(a)", "e(-a)")
    with pytest.raises(ZeroDivisionError):
        q_exp(x, -ONE, 2)


def test_phase_values():
    assert all(phase_A(A1_1, g) == 1 for g in [(0, 1), (1, 1), (1, -1), (3, -1)])
    assert phase_A(C2_2, (1, 1)) == -1
    assert phase_A(C2_2, (1, -1)) == 1
    assert phase_A(C2_2, (0, 1)) == 1
    with pytest.raises(RootError):
        phase_A(C2_2, (1, 0))


def test_factor_sign_values():
    # (-1)^{(n+1) theta} on n d + a and (-1)^{n theta} on n d - a
    assert [factor_sign(C2_2, (n, 1)) for n in range(4)] == [-1, 1, -1, 1]
    assert [factor_sign(C2_2, (n, -1)) for n in range(1, 5)] == [-1, 1, -1, 1]
    assert all(factor_sign(A1_1, (n, k)) == 1 for n in range(4) for k in (1, -1) if (n, k) != (0, -1))


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
def test_leading_terms(kind):
    r = build_r(kind, 1)
    expected = TensorExpression.one(kind) + tensor(kind, "e(a)", "e(-a)").scale(Q_DIFF * factor_sign(kind, (0, 1)))
    assert r.r_plus == expected
    r2 = build_r(kind, 2)
    assert r2.r_zero == TensorExpression.one(kind) + tensor(kind, "e(d)", "e(-d)").scale(Q_DIFF * d_of(1))


def test_second_order_coefficient_superalgebra():
    # base q_a^-1 = -q^-2, so (2)! = 1 - q^-2; the e_a^2 (x) e_-a^2 coefficient is 1 - q^2
    r = build_r(C2_2, 2)
    key = next(k for k in r.r_plus.terms if len(k[0]) == 2 and k[0][0] == k[0][1])
    assert r.r_plus.terms[key] == ONE - Q * Q


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
@pytest.mark.parametrize("D", [3, 4])
def test_weight_pairing_and_triangularity(kind, D):
    r = build_r(kind, D)
    for name, t in (("plus", r.r_plus), ("zero", r.r_zero), ("minus", r.r_minus), ("all", r.product())):
        for a, b in t.terms:
            (n1, k1), (n2, k2) = monomial_weight(a), monomial_weight(b)
            assert (n1 + n2, k1 + k2) == (0, 0)
            assert leg_height((a, b)) <= D
            if name == "zero":
                assert k1 == 0
            if name != "all" and (a, b) != ((), ()):
                assert n1 > 0 or (n1 == 0 and k1 > 0)


def test_truncation_degree_must_be_positive():
    with pytest.raises(ValueError):
        build_r(A1_1, 0)


def test_k_conjugation():
    t = tensor(A1_1, "e(a)", "e(a)")
    assert k_conjugate(t) == tensor(A1_1, "e(a)*k(a)", "k(a)*e(a)")
    one = TensorExpression.one(A1_1)
    assert k_conjugate(one) == one


@pytest.mark.parametrize("kind", KINDS, ids=kind_ids)
@pytest.mark.parametrize("text", INTERTWINING_GENERATORS)
def test_intertwining_at_three(kind, text):
    assert check_intertwining(kind, parse_expression(text, kind), 3).is_zero()


def test_intertwining_needs_room():
    with pytest.raises(ValueError):
        check_intertwining(A1_1, parse_expression("e(a)", A1_1), 2)


def test_alternative_phase_leaves_a_residual():
    # the sign A(gamma) without the extra (-1)^theta fails for the superalgebra
    residual = check_intertwining(C2_2, parse_expression("e(a)", C2_2), 3, phase=phase_A)
    assert not residual.is_zero()
    assert check_intertwining(A1_1, parse_expression("e(a)", A1_1), 3, phase=phase_A).is_zero()


@pytest.mark.parametrize("D", [1, 2, 3, 4])
def test_zeroed_superalgebra_reproduces_untwisted(D):
    a, c = build_r(A1_1, D), build_r(C2_2.zeroed(), D)
    for part in ("r_plus", "r_zero", "r_minus"):
        assert getattr(a, part).terms == getattr(c, part).terms
        assert str(getattr(a, part)) == str(getattr(c, part))


def test_factorization_json():
    data = build_r(C2_2, 2).to_json()
    assert data["degree"] == 2 and data["theta"] == 1 and data["k_factor"] == "K"
    assert {"r_plus", "r_zero", "r_minus"} <= set(data)


def test_evaluation_module_satisfies_relations():
    assert evaluation_representation_check(Fraction(3, 2)) == []


@pytest.mark.parametrize("order", [1, 2])
def test_yang_baxter_in_evaluation_module(order):
    assert ybe_check_eval(order, Fraction(3, 2)) == {}


def test_yang_baxter_detects_a_corrupted_imaginary_factor(monkeypatch):
    monkeypatch.setattr(rm, "d_of", lambda n: d_of(n) * 2)
    assert ybe_check_eval(2, Fraction(3, 2)) != {}


@pytest.mark.parametrize("q", [0, 1, -1])
def test_yang_baxter_rejects_degenerate_q(q):
    with pytest.raises(ValueError):
        ybe_check_eval(1, q)
