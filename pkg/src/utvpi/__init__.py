"""Integer optimization on UTVPI systems via half-integral relaxation and persistency."""

from .binary import decide_at_most_k, solve_exact, two_approx_binary, two_sat_solve
from .dcs import detect_negative_cycle, double, integer_feasible, tighten_for_integers
from .formats import ExtendedInstance, ParseError, parse_instance, write_instance, write_solution
from .model import (
    Constraint,
    DualCertificate,
    IlpSolution,
    LpSolution,
    Status,
    UtvpiInstance,
    evaluate,
    in_integer_neighborhood,
    is_feasible,
    verify_dual_certificate,
)
from .persistency import BinaryReduction, decide, lift, reduce_to_binary, solve_ilp, two_approx
from .relax import maximal_integrality, solve_lo

__version__ = "0.1.0"

__all__ = [
    "BinaryReduction", "Constraint", "DualCertificate", "ExtendedInstance", "IlpSolution",
    "LpSolution", "ParseError", "Status", "UtvpiInstance", "decide", "decide_at_most_k",
    "detect_negative_cycle", "double", "evaluate", "in_integer_neighborhood", "integer_feasible",
    "is_feasible", "lift", "maximal_integrality", "parse_instance", "reduce_to_binary",
    "solve_exact", "solve_ilp", "solve_lo", "tighten_for_integers", "two_approx",
    "two_approx_binary", "two_sat_solve", "verify_dual_certificate", "write_instance",
    "write_solution",
]
