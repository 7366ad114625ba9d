"""Tangles, polynomial invariants and monogamy constraints of four-qubit pure states."""
from .errors import QMonogamyError
from .monogamy import analyze, evaluate_constraints
from .qstate import DensityMatrix, PureState, load_state, partial_trace, save_state
from .spectral import concurrence, poly_coeffs, two_tangle
from .tangles import tangle_report, three_tangle_mixed
from .zoo import classify, make

__all__ = [
    "QMonogamyError", "analyze", "evaluate_constraints", "DensityMatrix", "PureState",
    "load_state", "partial_trace", "save_state", "concurrence", "poly_coeffs",
    "two_tangle", "tangle_report", "three_tangle_mixed", "classify", "make",
]
