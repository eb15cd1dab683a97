from quadnet.bifurcation.base_map import RealMapFamily
from quadnet.bifurcation import maps  # noqa: F401  (registers the built-in families)
from quadnet.bifurcation.fixed_points import (
    BranchEnd,
    FixedPointRecord,
    FixedPointScan,
    all_fixed_points,
    fixed_point_scan,
    newton_fixed_point,
)
from quadnet.bifurcation.periodicity import OrbitClass, superattracting_check, superattracting_parameters
from quadnet.bifurcation.registry import available, get
from quadnet.bifurcation.sweep import (
    DEFAULT_BOUND,
    DEFAULT_REFINE_TOL,
    DEFAULT_SAMPLES,
    DEFAULT_STEPS,
    DEFAULT_TRANSIENT,
    BifurcationSweep,
    SweepRecord,
    bounded_windows,
    sweep,
)

__all__ = [
    "BifurcationSweep",
    "BranchEnd",
    "DEFAULT_BOUND",
    "DEFAULT_REFINE_TOL",
    "DEFAULT_SAMPLES",
    "DEFAULT_STEPS",
    "DEFAULT_TRANSIENT",
    "FixedPointRecord",
    "FixedPointScan",
    "OrbitClass",
    "RealMapFamily",
    "SweepRecord",
    "all_fixed_points",
    "available",
    "bounded_windows",
    "fixed_point_scan",
    "get",
    "newton_fixed_point",
    "superattracting_check",
    "superattracting_parameters",
    "sweep",
]
