"""Approximately monotone and convex sequences: deficits, decompositions,
piecewise-linear extensions and the reflection operator on PL functions."""

from .analyze import (
    cauchy_epsilon,
    convex_deficit,
    geometric_mean_test,
    holder_deficit,
    lipschitz_modulus,
    monotone_deficit,
    order_k_deficit,
)
from .core import (
    EXACT,
    ApproxSeqError,
    Certificate,
    DeficitReport,
    DomainError,
    InputError,
    Mode,
    ModeError,
    PreconditionError,
    Seq,
    differences,
    seq_from_values,
)
from .decompose import (
    compose_convex,
    convex_split,
    jordan_split,
    monotone_approx,
    reciprocal,
    seq_sum,
    tail_infimum,
    verify_certificate,
)
from .plfunc import (
    PLFunc,
    chord_slope,
    eps_convex_deficit_fn,
    eps_monotone_deficit_fn,
    evaluate,
    extend,
    is_convex_fn,
    mediant_bounds,
    slopes,
)
from .twist import (
    SymmetryClass,
    check_symmetry,
    is_periodic,
    recenter,
    slope_function,
    twist,
    verify_thm11,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxSeqError",
    "cauchy_epsilon",
    "Certificate",
    "check_symmetry",
    "chord_slope",
    "compose_convex",
    "convex_deficit",
    "convex_split",
    "DeficitReport",
    "differences",
    "DomainError",
    "eps_convex_deficit_fn",
    "eps_monotone_deficit_fn",
    "evaluate",
    "EXACT",
    "extend",
    "geometric_mean_test",
    "holder_deficit",
    "InputError",
    "is_convex_fn",
    "is_periodic",
    "jordan_split",
    "lipschitz_modulus",
    "mediant_bounds",
    "Mode",
    "ModeError",
    "monotone_approx",
    "monotone_deficit",
    "order_k_deficit",
    "PLFunc",
    "PreconditionError",
    "recenter",
    "reciprocal",
    "Seq",
    "seq_from_values",
    "seq_sum",
    "slope_function",
    "slopes",
    "SymmetryClass",
    "tail_infimum",
    "twist",
    "verify_certificate",
    "verify_thm11",
]
