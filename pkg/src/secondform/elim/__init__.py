"""Exact replay of the case analysis for ``Delta^II x = A x`` on surfaces of revolution."""
from .cases import CASES, case_V, cubic_from_axial, run_all, run_case
from .poly import SYMBOLS, NotDivisibleError, PolyError, SymFrac, SymPoly, gcd, gcd_list
from .published import compare, published_polynomial
from .rules import (
    ReductionError,
    ZeroResultError,
    derive,
    derive_step,
    eliminate,
    general_identity,
    normalize,
    reduce,
)
from .trace import CascadeTrace, TraceStep, verify_certificates

__all__ = [
    "CASES",
    "CascadeTrace",
    "NotDivisibleError",
    "PolyError",
    "ReductionError",
    "SYMBOLS",
    "SymFrac",
    "SymPoly",
    "TraceStep",
    "ZeroResultError",
    "case_V",
    "compare",
    "cubic_from_axial",
    "derive",
    "derive_step",
    "eliminate",
    "gcd",
    "gcd_list",
    "general_identity",
    "normalize",
    "published_polynomial",
    "reduce",
    "run_all",
    "run_case",
    "verify_certificates",
]
