"""Surface families sharing a common null asymptotic curve in Minkowski 3-space."""

from .config import DEFAULT_TOLERANCES, Tolerances
from .curve import AnalyticFrame, CartanFrameSample, NullCurve, build_cartan_frame, check_null, validate_frame
from .lorentz import MVec3, causal_character, lorentz_cross, minkowski_inner, pseudo_norm
from .marching import (
    Composed,
    Custom,
    MarchingScale,
    Polynomial,
    Product,
    check_asymptotic_general,
    check_isoparametric,
    check_sufficient_form,
    eval_marching,
    partials_marching,
)
from .scene import Scene, load_scene, scene_from_dict
from .surface import (
    SurfaceFamilyMember,
    asymptotic_residual,
    evaluate_surface,
    normal_direct,
    normal_frame_expansion,
    verify_member,
)

__version__ = "0.1.0"
