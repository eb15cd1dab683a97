from quadnet.topology.labeling import ComponentCount, UnionFind, count_components, label_mask
from quadnet.topology.loci import (
    DEFAULT_LOCUS_RESOLUTION,
    LocusRaster,
    ab_connectedness_locus,
    ab_membership_locus,
    equi_m_component_count,
    uni_j_connectedness_locus,
)
from quadnet.topology.morphology import (
    DEFAULT_BLOWUP_RADIUS,
    DEFAULT_CONNECTIVITY,
    component_count_blowup,
    dilate,
    disc_footprint,
)

__all__ = [
    "ComponentCount",
    "DEFAULT_BLOWUP_RADIUS",
    "DEFAULT_CONNECTIVITY",
    "DEFAULT_LOCUS_RESOLUTION",
    "LocusRaster",
    "UnionFind",
    "ab_connectedness_locus",
    "ab_membership_locus",
    "component_count_blowup",
    "count_components",
    "dilate",
    "disc_footprint",
    "equi_m_component_count",
    "label_mask",
    "uni_j_connectedness_locus",
]
