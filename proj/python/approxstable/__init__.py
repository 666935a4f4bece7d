"""Approximately stable two-sided matching under independence-system constraints.

Thin wrapper around the C++ core: deferred acceptance with pluggable online
packing algorithms, alpha-stability checking, exhaustive oracles, and the
instance generators.
"""

from approxstable._core import (
    ContractViolation,
    Market,
    Matching,
    OracleLimitError,
    ValidationError,
    alpha_stability_check,
    best_alpha,
    certified_alpha,
    find_stable,
    gen_example1,
    gen_example2,
    gen_random,
    gen_thm62,
    gen_thm63,
    is_stable,
    market_from_json,
    matching_from_json,
    min_alpha,
    run_gda,
    solve_pack,
)

__all__ = [
    "ContractViolation",
    "Market",
    "Matching",
    "OracleLimitError",
    "ValidationError",
    "alpha_stability_check",
    "best_alpha",
    "certified_alpha",
    "find_stable",
    "gen_example1",
    "gen_example2",
    "gen_random",
    "gen_thm62",
    "gen_thm63",
    "is_stable",
    "market_from_json",
    "matching_from_json",
    "min_alpha",
    "run_gda",
    "solve_pack",
]
