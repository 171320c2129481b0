"""Exact signature invariants and cobordism distance bounds for torus links."""

from .links import DomainError, TorusLink, as_theta, chi, genus4, normalize
from .signature import (
    LatticeSpectrum, SignatureProfile, classical_signature, epsilon, glm_signature, profile,
    sigma_chi_limit, signature_at, slope_sequence,
)
from .planner import (
    CobordismPlan, Move, best_upper, prop1_plan, rectangle_cost, split_move, theorem1_plan,
    theorem2_upper, validate_plan,
)
from .bounds import BoundReport, delta_chi, delta_sigma_sup, report, tau
from .stable import PairSpanPoint, ball_polygon, gst_axis, norm_lower, norm_upper

__version__ = "0.1.0"
