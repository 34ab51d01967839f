"""Exact recognition of Veronese germs by an order-by-order projective normal form."""

from .errors import (
    BadTangentError,
    CurveNotInChartError,
    DomainError,
    HypothesisNotMetError,
    InconsistencyError,
    InsufficientOrderError,
    NotAUnitError,
    NotQRegularError,
)
from .germ import (
    CurveJet,
    Germ,
    RawGerm,
    check_family_pattern,
    curve_span_rank,
    disguise,
    is_q_regular,
    line_curve,
    make_family_germ,
    osculating_dimension,
    project_drop,
    reparametrize,
    veronese,
)
from .jets import HomogeneousPoly, MJet, UJet, mjet_reverse, s1_divide, ujet_reverse
from .linalg import exact_rank
from .projective import Homography, apply_homography, homography_compose, homography_inverse
from .reduction import decide_veronese, run_pipeline
from .rnc import RncPoly, fit_rnc, normalize_param, rigidity_check

__all__ = [
    "BadTangentError", "CurveJet", "CurveNotInChartError", "DomainError", "Germ",
    "HomogeneousPoly", "Homography", "HypothesisNotMetError", "InconsistencyError",
    "InsufficientOrderError", "MJet", "NotAUnitError", "NotQRegularError", "RawGerm",
    "RncPoly", "UJet", "apply_homography", "check_family_pattern", "curve_span_rank",
    "decide_veronese", "disguise", "exact_rank", "fit_rnc", "homography_compose",
    "homography_inverse", "is_q_regular", "line_curve", "make_family_germ",
    "mjet_reverse", "normalize_param", "osculating_dimension", "project_drop",
    "reparametrize", "rigidity_check", "run_pipeline", "s1_divide", "ujet_reverse",
    "veronese",
]
