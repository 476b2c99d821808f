"""Symmetry verification toolkit for the 3D sigma-2 Hessian equation.

The package recomputes a published symmetry analysis from first
principles and checks every table against the recomputation: structure
constants, adjoint actions, the optimal system of one-dimensional
subalgebras, the preliminary group classification, and the
one-parameter solution transforms.

Layering, bottom to top:

    expr / parse / normalize   exact expression kernel + zero oracles
    fields / catalog           vector fields, published bases and tables
    jets / determining         second-order prolongation machinery
    optimal                    adjoint reduction to normal forms
    classify / flows           classification rows, invariants, flows
    report / cli               check suites, rendering, entry point
"""

from .expr import Expr, ExprError
from .parse import ParseError, parse
from .normalize import (
    DEFAULT_SEED,
    NonZero,
    NumericallyZero,
    ProvedZero,
    Verdict,
    is_zero,
    normalize,
    print_canonical,
)
from .fields import VectorField, commutator, structure_table, adjoint, vf
from .catalog import (
    OPTIMAL_PATTERNS,
    classification_rows,
    equivalence_basis,
    principal_basis,
    reduced_basis,
    row_by_id,
)
from .jets import SymmetryCheck, check_symmetry, prolong2, solve_uyy
from .determining import (
    free_constants_absent,
    numeric_invariance_check,
    residual_on_variety,
    symmetry_condition,
)
from .optimal import ReductionError, ReductionTrace, reduce_to_optimal, replay
from .classify import (
    verify_all_rows,
    verify_bila_procedure,
    verify_invariants,
    verify_principal,
    verify_reflection,
    verify_row,
)
from .flows import apply_case, case_by_id, tian_base, verify_all_cases, verify_case
from .report import (
    SUITE_NAMES,
    SuiteReport,
    overall_status,
    render_json,
    render_markdown,
    run_suite,
    run_suites,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # kernel
    "Expr", "ExprError", "ParseError", "parse",
    "normalize", "print_canonical", "is_zero",
    "Verdict", "ProvedZero", "NumericallyZero", "NonZero", "DEFAULT_SEED",
    # algebra
    "VectorField", "vf", "commutator", "structure_table", "adjoint",
    "equivalence_basis", "reduced_basis", "principal_basis",
    "classification_rows", "row_by_id", "OPTIMAL_PATTERNS",
    # invariance machinery
    "prolong2", "solve_uyy", "check_symmetry", "SymmetryCheck",
    "residual_on_variety", "symmetry_condition",
    "numeric_invariance_check", "free_constants_absent",
    # optimal system
    "ReductionError", "ReductionTrace", "reduce_to_optimal", "replay",
    # classification and flows
    "verify_row", "verify_all_rows", "verify_bila_procedure",
    "verify_reflection", "verify_invariants", "verify_principal",
    "verify_case", "verify_all_cases", "apply_case", "case_by_id",
    "tian_base",
    # reporting
    "SUITE_NAMES", "SuiteReport", "run_suite", "run_suites",
    "overall_status", "render_json", "render_markdown",
]
