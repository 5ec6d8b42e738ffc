"""Multiple Dedekind symbols, reciprocity functions and iterated Eichler integrals."""

from ._mdsym import (
    DomainError,
    Error,
    NonConvergence,
    NotShuffled,
    canonical,
    dedekind_symbol_length1,
    evaluate,
    gamma02_D,
    gamma02_delta,
    gamma02_F,
    reciprocity_law_check,
    symbol,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "Error",
    "NonConvergence",
    "NotShuffled",
    "canonical",
    "dedekind_symbol_length1",
    "evaluate",
    "gamma02_D",
    "gamma02_delta",
    "gamma02_F",
    "reciprocity_law_check",
    "symbol",
]
