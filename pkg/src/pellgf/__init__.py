"""Exact Pell-equation sequences, their generating functions, and where
those generating functions take integer values."""

from .classic import classify_classic, eval_fib_gf, eval_lucas_gf, pell_correspondence
from .classifier import (
    Classification,
    Family,
    Verdict,
    Witness,
    classify,
    classify_within_radius,
    integer_level_set,
)
from .exact import Rational, isqrt, make_rational, parse_rational
from .genfunc import GFValue, eval_F, eval_L, partial_sum, within_radius
from .oracle import CLASSIC, SweepReport, identity_grid, minimality_scan, sweep
from .pell import CFExpansion, FundamentalSolution, continued_fraction_sqrt, fundamental_solution, is_square
from .sequences import PellContext, SeqKind, check_identity, pell_invariant, term, terms_upto

__all__ = [
    "CFExpansion",
    "CLASSIC",
    "Classification",
    "Family",
    "FundamentalSolution",
    "GFValue",
    "PellContext",
    "Rational",
    "SeqKind",
    "SweepReport",
    "Verdict",
    "Witness",
    "check_identity",
    "classify",
    "classify_classic",
    "classify_within_radius",
    "continued_fraction_sqrt",
    "eval_F",
    "eval_L",
    "eval_fib_gf",
    "eval_lucas_gf",
    "fundamental_solution",
    "identity_grid",
    "integer_level_set",
    "is_square",
    "isqrt",
    "make_rational",
    "minimality_scan",
    "parse_rational",
    "partial_sum",
    "pell_correspondence",
    "pell_invariant",
    "sweep",
    "term",
    "terms_upto",
    "within_radius",
]
