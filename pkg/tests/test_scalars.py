from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from qaffine.scalars import ONE, Q, ZERO, Scalar, a_of, bracket_qnum, d_of, paren_qnum

from oracles import q, same, to_sympy

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
laurent = st.dictionaries(st.integers(-4, 4), coeffs, max_size=4).map(Scalar.laurent)
nonzero_laurent = laurent.filter(lambda s: not s.is_zero())
scalars = st.builds(lambda a, b: a / b, laurent, nonzero_laurent)
nonzero_scalars = scalars.filter(lambda s: not s.is_zero())


def test_bar_of_q_is_q_inverse():
    assert Q.bar() == Q.inverse()


def test_bar_fixes_one():
    assert ONE.bar() == ONE


def test_bar_of_q_difference_is_negated():
    diff = Q - Q.inverse()
    assert diff.bar() == -diff
    assert same(diff.bar(), 1 / q - q)


def test_bracket_qnum_values():
    assert same(bracket_qnum(2), q + 1 / q)
    assert bracket_qnum(1) == ONE
    assert bracket_qnum(0) == ZERO


@pytest.mark.parametrize("n", range(-6, 7))
def test_bracket_qnum_matches_quotient(n):
    assert same(bracket_qnum(n), (q**n - q**-n) / (q - 1 / q))
    assert bracket_qnum(-n) == -bracket_qnum(n)


def test_paren_qnum_values():
    assert same(paren_qnum(2), q + 1)
    assert paren_qnum(1) == ONE
    assert paren_qnum(0) == ZERO
    assert same(paren_qnum(3), q**2 + q + 1)


def test_paren_qnum_rejects_negative():
    with pytest.raises(ValueError):
        paren_qnum(-1)


@pytest.mark.parametrize("n", range(1, 7))
def test_paren_qnum_matches_quotient(n):
    assert same(paren_qnum(n), (q**n - 1) / (q - 1))


def test_a_of_values():
    assert same(a_of(1), q + 1 / q)
    assert same(a_of(2), (q**4 - q**-4) / (2 * (q - 1 / q)))
    assert a_of(1) * d_of(1) == ONE


def test_d_of_values():
    assert same(d_of(1), 1 / (q + 1 / q))
    assert same(d_of(2), 2 * (q - 1 / q) / (q**4 - q**-4))


@pytest.mark.parametrize("m", range(1, 6))
def test_a_and_d_are_inverse_and_bar_invariant(m):
    assert a_of(m) * d_of(m) == ONE
    assert a_of(m).bar() == a_of(m)
    assert d_of(m).bar() == d_of(m)


@pytest.mark.parametrize("m", [0, -1])
def test_a_and_d_reject_nonpositive(m):
    with pytest.raises(ValueError):
        a_of(m)
    with pytest.raises(ValueError):
        d_of(m)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@given(scalars)
def test_canonical_form(s):
    if s.is_zero():
        return
    den = s.laurent_terms("den")
    assert den[0] == (0, Fraction(1))
    g = sympy.gcd(sympy.Poly(s.num.coeffs()[::-1] or [0], q), sympy.Poly(s.den.coeffs()[::-1], q))
    assert g.degree() == 0


@given(scalars)
def test_matches_sympy_reference(s):
    rebuilt = sympy.cancel(to_sympy(s))
    assert same(s, rebuilt)


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO
    assert hash(a + b) == hash(b + a)


@given(scalars, nonzero_scalars)
def test_division_roundtrip(a, b):
    assert (a / b) * b == a
    assert b * b.inverse() == ONE
    assert same(a / b, to_sympy(a) / to_sympy(b))


@given(scalars, scalars)
def test_bar_is_field_automorphism(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()
    assert a.bar().bar() == a


@given(st.integers(-8, 8))
def test_bracket_qnum_bar_invariant(n):
    assert bracket_qnum(n).bar() == bracket_qnum(n)


@given(scalars)
def test_json_roundtrip(s):
    assert Scalar.from_json(s.to_json()) == s


@given(laurent, st.fractions(min_value=Fraction(1, 3), max_value=3, max_denominator=5))
def test_evaluate_matches_sympy(s, value):
    expected = to_sympy(s).subs(q, sympy.Rational(value.numerator, value.denominator))
    assert s.evaluate(value) == Fraction(int(sympy.numer(expected)), int(sympy.denom(expected)))


def test_q_power_and_str():
    assert str(Scalar.q_power(-2, 3)) == "3*q^-2"
    assert str(Q - Q.inverse()) == "q - q^-1"
