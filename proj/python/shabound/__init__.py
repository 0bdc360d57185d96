"""Descent invariants and Selmer/Sha bounds for rational p-isogenies.

Report functions return the same dictionaries the CLI prints with --json;
integers inside reports are decimal strings.
"""

from ._core import (
    IncompleteFactorization,
    ValidationError,
    analyze,
    bounds,
    budget,
    character,
    crt,
    factor,
    is_prime,
    matrix,
    sandwich,
    search,
)

__all__ = [
    "IncompleteFactorization",
    "ValidationError",
    "analyze",
    "bounds",
    "budget",
    "character",
    "crt",
    "factor",
    "is_prime",
    "matrix",
    "sandwich",
    "search",
]
