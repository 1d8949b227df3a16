"""Ring class fields of imaginary quadratic orders via eta-quotients."""

from .diophantine import Decision, Outcome, RepresentationProblem, brute_force_represents, represents, sweep
from .galois import BinaryQF, Mat2, class_number_order, conjugate_data, reduced_forms
from .invariants import (
    HypothesisWarning,
    RecognitionError,
    conjugates,
    min_poly,
    min_poly_j,
    ring_class_invariant,
    verify_norm_identity,
)
from .modular import PrecisionCtx, build_eta_quotient, check_ono_conditions, eta, j_invariant
from .polynomial import IntPoly, discriminant
from .quadratic import (
    InvalidDiscriminant,
    group_order_G,
    hypothesis_holds,
    make_field,
    make_order,
    order_of_form_x2_ny2,
)

__version__ = "0.1.0"
