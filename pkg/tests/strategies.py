"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from qaffine.roots import A1_1, C2_2
from qaffine.scalars import Scalar
from qaffine.terms import Cartan, Expression, RootVector, make_root_vector

kinds = st.sampled_from([A1_1, C2_2])

chevalley_letters = st.sampled_from([RootVector(0, 1), RootVector(1, -1), RootVector(0, -1), RootVector(-1, 1)])
cartans = st.builds(Cartan, st.integers(-1, 1), st.integers(-2, 2), st.integers(-2, 2)).filter(
    lambda c: not c.is_identity()
)
real_vectors = st.builds(
    lambda n, k, fam: make_root_vector((n, k), fam),
    st.integers(-3, 3),
    st.sampled_from([1, -1]),
    st.sampled_from(["direct", "inverse"]),
)
imaginary_vectors = st.builds(
    lambda n, primed: RootVector(n, 0, "direct", primed),
    st.integers(-3, 3).filter(bool),
    st.booleans(),
)
coefficients = st.builds(
    lambda e, c: Scalar.q_power(e, c), st.integers(-3, 3), st.integers(-3, 3).filter(bool)
) | st.builds(lambda a, b: Scalar.laurent({a: 1, b: -1}) or Scalar.q_power(0), st.integers(-2, 2), st.integers(-2, 2))


def expressions(kind, letters, max_terms=3, max_len=4):
    monomials = st.lists(letters, max_size=max_len).map(tuple)
    return st.lists(st.tuples(monomials, coefficients), min_size=1, max_size=max_terms).map(
        lambda ts: Expression(kind, ts)
    )


def chevalley_expressions(kind, max_terms=3, max_len=4):
    return expressions(kind, chevalley_letters | cartans, max_terms, max_len)


def homogeneous_monomials(kind, letters, max_len=4):
    return st.lists(letters, min_size=1, max_size=max_len).map(lambda m: Expression(kind, [(tuple(m), 1)]))
