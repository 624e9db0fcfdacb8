"""Flexible job shop scheduling with dag precedence constraints.

Processing times, bounds and model values are exact rationals
(fractions.Fraction); integers and "p/q" strings are accepted on input.
"""

from ._core import (
    FjsError,
    Instance,
    Model,
    Result,
    Rng,
    Solution,
    brute_force,
    build_model,
    decode,
    encode,
    est,
    fractional_witness,
    gen_dafjs,
    gen_yfjs,
    lb_tight,
    make_solution,
    parse_solution,
    root_lower_bound,
    solve_exact,
    validate,
)

__version__ = "1.0.0"

__all__ = [
    "FjsError",
    "Instance",
    "Model",
    "Result",
    "Rng",
    "Solution",
    "brute_force",
    "build_model",
    "decode",
    "encode",
    "est",
    "fractional_witness",
    "gen_dafjs",
    "gen_yfjs",
    "lb_tight",
    "make_solution",
    "parse_solution",
    "root_lower_bound",
    "solve_exact",
    "validate",
]
