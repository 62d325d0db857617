"""Annihilating polynomials for solutions of discrete differential equations."""

from .hermite_pade import Bidegree, GuessProblem, guess_algebraic, prove_guess
from .parser import DdeSpec, ParseError, load_dde, parse_dde, parse_poly, print_poly, shipped_example
from .series import check_annihilation, expand_bivariate, expand_specialized
from .solvers import (
    AnnihilatorResult,
    SolveOptions,
    Unsupported,
    annihilating_polynomial,
    discover_bidegree,
    solve_duplication,
    solve_elimination,
    solve_geometry,
    solve_hybrid,
)
from .systems import AssumptionViolated

__all__ = [
    "AnnihilatorResult",
    "AssumptionViolated",
    "Bidegree",
    "DdeSpec",
    "GuessProblem",
    "ParseError",
    "SolveOptions",
    "Unsupported",
    "annihilating_polynomial",
    "check_annihilation",
    "discover_bidegree",
    "expand_bivariate",
    "expand_specialized",
    "guess_algebraic",
    "load_dde",
    "parse_dde",
    "parse_poly",
    "print_poly",
    "prove_guess",
    "shipped_example",
    "solve_duplication",
    "solve_elimination",
    "solve_geometry",
    "solve_hybrid",
]
