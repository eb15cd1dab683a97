from quadnet.raster.grid import BinaryRaster, EscapeRaster, GridSpec
from quadnet.raster.masks import boundary_mask, prisoner_mask
from quadnet.raster.render import (
    DEFAULT_ESCAPE_RADIUS,
    DEFAULT_MAX_ITER,
    DEFAULT_RESOLUTION,
    critical_escape_field,
    equi_m_raster,
    escape_times,
    node_m_raster,
    uni_j_raster,
)

__all__ = [
    "BinaryRaster",
    "DEFAULT_ESCAPE_RADIUS",
    "DEFAULT_MAX_ITER",
    "DEFAULT_RESOLUTION",
    "EscapeRaster",
    "GridSpec",
    "boundary_mask",
    "critical_escape_field",
    "equi_m_raster",
    "escape_times",
    "node_m_raster",
    "prisoner_mask",
    "uni_j_raster",
]
