"""Exact Hilbert-Mumford tools for pencils of plane sextics."""

from .criterion import (
    CriticalSubdivision,
    PatternCheck,
    VanishingPattern,
    check_pattern,
    class_weight,
    critical_values,
    derive_subdivision,
    minimal_pattern,
    pattern_at,
)
from .forms import HomForm, LinearChange, common_factor_degree, multiply, substitute
from .halphen import (
    Certificate,
    HalphenExample,
    VerdictReport,
    build_halphen,
    certify,
    multiplicity_at_point,
    paper_tables_regression,
    run_catalog,
)
from .normal_forms import (
    ConstraintState,
    NormalFormCase,
    case_split,
    enumerate_quadruples,
    match_catalog,
    normal_forms,
    verify_forward,
)
from .parsing import PolynomialSyntaxError, PolynomialValueError, evaluate, parse, parse_form
from .pluecker import (
    Pencil,
    PlueckerVector,
    WeightData,
    change_pencil_basis,
    compute_mu,
    diagonal_action,
    pluecker,
    weight_exponent,
)

__all__ = [
    "CriticalSubdivision",
    "PatternCheck",
    "VanishingPattern",
    "check_pattern",
    "class_weight",
    "critical_values",
    "derive_subdivision",
    "minimal_pattern",
    "pattern_at",
    "HomForm",
    "LinearChange",
    "common_factor_degree",
    "multiply",
    "substitute",
    "Certificate",
    "HalphenExample",
    "VerdictReport",
    "build_halphen",
    "certify",
    "multiplicity_at_point",
    "paper_tables_regression",
    "run_catalog",
    "ConstraintState",
    "NormalFormCase",
    "case_split",
    "enumerate_quadruples",
    "match_catalog",
    "normal_forms",
    "verify_forward",
    "PolynomialSyntaxError",
    "PolynomialValueError",
    "evaluate",
    "parse",
    "parse_form",
    "Pencil",
    "PlueckerVector",
    "WeightData",
    "change_pencil_basis",
    "compute_mu",
    "diagonal_action",
    "pluecker",
    "weight_exponent",
]

__version__ = "0.1.0"
