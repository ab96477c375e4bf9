from .expression import (
    Cartan,
    Expression,
    ExpressionError,
    RootVector,
    cartan_of_root,
    commutator,
    generator_expr,
    weight,
)
from .parser import ParseError, make_root_vector, parse_expression

__all__ = [
    "Cartan",
    "Expression",
    "ExpressionError",
    "RootVector",
    "ParseError",
    "cartan_of_root",
    "commutator",
    "generator_expr",
    "make_root_vector",
    "parse_expression",
    "weight",
]
