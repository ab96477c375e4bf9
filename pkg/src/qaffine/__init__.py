"""Exact computations in U_q(A1^(1)) and U_q(C(2)^(2)).

The two algebras share one code path; every phase factor is derived from the
parity of the roots involved.
"""
from .roots import A1_1, C2_2, AlgebraKind, Root, kind_from_name
from .scalars import Q, Scalar

__all__ = ["A1_1", "C2_2", "AlgebraKind", "Root", "kind_from_name", "Q", "Scalar"]
__version__ = "0.1.0"
