"""Associative arrays over sparse matrices with semiring algebra."""

from .assoc import (
    Assoc,
    ByKey,
    InvariantError,
    add,
    array_product,
    check_invariants,
    combine,
    condense,
    elementwise_max,
    elementwise_min,
    from_adjacency,
    from_triples,
    get,
    logical,
    multiply_elementwise,
    set_value,
    transpose,
)
from .semiring import Semiring, StringAlgebra, check_axioms, max_min, max_plus, plus_times, string_algebra
from .sorted_sets import sorted_intersection, sorted_union, sorted_unique

__version__ = "0.1.0"

__all__ = [
    "Assoc",
    "ByKey",
    "InvariantError",
    "add",
    "array_product",
    "check_invariants",
    "combine",
    "condense",
    "elementwise_max",
    "elementwise_min",
    "from_adjacency",
    "from_triples",
    "get",
    "logical",
    "multiply_elementwise",
    "set_value",
    "transpose",
    "Semiring",
    "StringAlgebra",
    "check_axioms",
    "max_min",
    "max_plus",
    "plus_times",
    "string_algebra",
    "sorted_intersection",
    "sorted_union",
    "sorted_unique",
]
