from quadnet.ensemble.classes import (
    ClassPartition,
    InvarianceReport,
    class_invariance_experiment,
    cross_classes,
    partition_asymptotic,
    partition_frame,
    partition_spectral,
    spectral_key,
)
from quadnet.ensemble.configurations import (
    DEFAULT_CAP,
    ConfigurationFamily,
    bitmask_hex,
    enumerate_configurations,
)
from quadnet.ensemble.core_sets import FractionRaster, core_equi_m, core_uni_j

__all__ = [
    "ClassPartition",
    "ConfigurationFamily",
    "DEFAULT_CAP",
    "FractionRaster",
    "InvarianceReport",
    "bitmask_hex",
    "class_invariance_experiment",
    "core_equi_m",
    "core_uni_j",
    "cross_classes",
    "enumerate_configurations",
    "partition_asymptotic",
    "partition_frame",
    "partition_spectral",
    "spectral_key",
]
