"""Exact valuative calculus of monomial functions on affine space."""

from .asymptotic import (
    FiniteStage,
    Powers,
    SubadditiveSystem,
    ValuationIdeals,
    approximation_error,
    asym_multiplier_ideal,
    asym_value,
    controlled_growth_check,
    limit_body,
    to_valfun,
)
from .dual_complex import DualComplexModel, QMPoint, blowup, eval_ideal, norm_on_complex, retract, toric_model
from .functions import ValFun, candidate_rays, is_convex_nonpositive, lct, norm, norm_lp, pointwise_max
from .geometry import Polyhedron, exact_lp, hull_with_orthant, minkowski_scale_sum, support_min
from .ideals import MonomialIdeal, combine, integral_closure, localize, minimalize, monomial, newton_polyhedron
from .multiplier import (
    envelope_ideal,
    is_qpsh,
    jumping_numbers,
    maximal_ideal_truncation,
    multiplier_ideal,
    multiplier_ideal_of_product,
    qpsh_envelope,
)
from .valuations import MonomialValuation, izumi_check

__all__ = [name for name in dir() if not name.startswith("_")]
