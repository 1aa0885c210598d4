"""Exact scalar, polynomial and linear-algebra kernel."""

from .linalg import (
    BadPrime,
    ExactMatrix,
    LiftError,
    ModularSystem,
    lifted_nullspace,
    nullspace,
    nullspace_mod_prime,
    primes,
    rational_reconstruct,
)
from .polys import (
    ONE,
    X,
    ZERO,
    BiPoly,
    Rational,
    UniPoly,
    as_rational,
    content_y,
    cramer_solve,
    discriminant_y,
    full_reduce,
    poly_det,
    poly_gcd,
    poly_lcm,
    poly_xgcd,
    pseudo_reduce_step,
    resultant_y,
    squarefree_decompose,
    squarefree_part,
    sylvester_matrix_y,
)
from .quotient import QuotElem, QuotRing, ZeroDivisorWitness, is_unit, quot_inverse

__all__ = [name for name in dir() if not name.startswith("_")]
