"""Exact resolution hardness measures for small clause-sets."""
from ._bits import CapExceeded
from .cnf import (
    BOTTOM,
    EPSILON,
    TOP,
    Clause,
    ClauseSet,
    DimacsError,
    PartialAssignment,
    TautologyError,
    apply,
    entails,
    is_satisfiable,
    parse_dimacs,
    prime_implicates,
    subsumption_reduce,
    write_dimacs,
)

__version__ = "0.1.0"
