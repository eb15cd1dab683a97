"""
Prisoner and boundary masks.
"""
from __future__ import annotations

import numpy as np
from scipy import ndimage

from quadnet.raster.grid import BinaryRaster, EscapeRaster

_EIGHT = np.ones((3, 3), dtype=bool)


def prisoner_mask(r: EscapeRaster) -> BinaryRaster:
    """True exactly where the orbit stayed bounded (data == -1)."""
    return BinaryRaster(r.grid, r.data == -1)


def boundary_mask(b: BinaryRaster) -> BinaryRaster:
    """Foreground pixels with at least one 8-neighbour off the set; outside the window counts as off."""
    interior = ndimage.binary_erosion(b.mask, structure=_EIGHT, border_value=0)
    return BinaryRaster(b.grid, b.mask & ~interior)
