"""Exact symbolic algebra for truncated Witt vector addition laws,
iterative higher derivations over F_p, and p-basis defining axioms,
plus a verifier that mechanically checks the identities tying them
together."""

__version__ = "0.1.0"

from .algebra import Params, Poly
from .errors import AlgebraError, InvariantViolation
from .fgl import (FormalGroupLaw, additive_constants_oracle,
                  iterativity_constants, make_fgl, mult_by_n)
from .hsd import (HSDerivation, canonical_law_derivation,
                  canonical_witt_derivation, delta_poly, delta_table,
                  extend_to_rational, parse_operator)
from .pbasis import (PBasisContext, decompose_poly, derivation_via_pbasis,
                     p_independence_check, p_power_decompose, recompose)
from .ratfun import RatFun, poly_gcd
from .verifier import CheckReport, VerifyOptions, run_suite, suite_names
from .witt import mult_by_p_endo, witt_addition_law, witt_polynomial

__all__ = [
    "__version__",
    "Params", "Poly", "RatFun", "poly_gcd",
    "AlgebraError", "InvariantViolation",
    "FormalGroupLaw", "make_fgl", "mult_by_n",
    "iterativity_constants", "additive_constants_oracle",
    "HSDerivation", "canonical_witt_derivation", "canonical_law_derivation",
    "delta_poly", "delta_table", "extend_to_rational", "parse_operator",
    "PBasisContext", "decompose_poly", "p_power_decompose", "recompose",
    "derivation_via_pbasis", "p_independence_check",
    "CheckReport", "VerifyOptions", "run_suite", "suite_names",
    "witt_addition_law", "witt_polynomial", "mult_by_p_endo",
]
