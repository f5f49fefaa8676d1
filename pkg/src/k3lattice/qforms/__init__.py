"""Finite quadratic forms, genus symbols and an exhaustive oracle."""

from .fqf import FiniteQuadraticForm, fqf_direct_sum, fqf_from_lattice, fqf_negate
from .jordan import jordan_decomposition, jordan_normal_form
from .oracle import (
    DEFAULT_BOUND,
    OracleBoundExceeded,
    brute_force_isomorphic,
    find_isometry,
    oracle_compare,
    oracle_invariants,
)
from .realize import NotRealizable, fqf_from_symbol
from .symbol import (
    Constituent,
    GenusSymbol,
    SymbolParseError,
    canonical_symbol,
    parse_symbol,
    signature_mod8,
    symbol_direct_sum,
    symbol_to_string,
    symbols_equivalent,
)

__all__ = [
    "FiniteQuadraticForm",
    "fqf_from_lattice",
    "fqf_direct_sum",
    "fqf_negate",
    "fqf_from_symbol",
    "NotRealizable",
    "jordan_decomposition",
    "jordan_normal_form",
    "Constituent",
    "GenusSymbol",
    "SymbolParseError",
    "parse_symbol",
    "symbol_to_string",
    "symbol_direct_sum",
    "canonical_symbol",
    "symbols_equivalent",
    "signature_mod8",
    "DEFAULT_BOUND",
    "OracleBoundExceeded",
    "oracle_invariants",
    "brute_force_isomorphic",
    "find_isometry",
    "oracle_compare",
]
