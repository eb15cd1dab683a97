from quadnet.families.builders import (
    FamilySpec,
    available,
    bipartite,
    bipartite_matrices,
    build,
    coupling_field,
    normalize_kind,
    self_drive,
    simple_dual,
    single,
    two_parameter_network,
)
from quadnet.families.hyperbolic import (
    CurveSample,
    DualFixedPoint,
    cardioid,
    curve_residual,
    dual_fixed_points,
    dual_fixedpoint_curves,
    in_main_cardioid,
    sample_curves,
)

__all__ = [
    "CurveSample",
    "DualFixedPoint",
    "FamilySpec",
    "available",
    "bipartite",
    "bipartite_matrices",
    "build",
    "cardioid",
    "coupling_field",
    "curve_residual",
    "dual_fixed_points",
    "dual_fixedpoint_curves",
    "in_main_cardioid",
    "normalize_kind",
    "sample_curves",
    "self_drive",
    "simple_dual",
    "single",
    "two_parameter_network",
]
