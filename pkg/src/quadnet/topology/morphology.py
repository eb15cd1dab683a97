"""
Binary dilation with a square pixel neighbourhood and the blow-up component count.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import ndimage

from quadnet.raster import BinaryRaster
from quadnet.topology.labeling import label_mask

DEFAULT_BLOWUP_RADIUS = 1.0
DEFAULT_CONNECTIVITY = 8


def disc_footprint(radius_px: float) -> np.ndarray:
    """
    Boolean footprint of the offsets (dy, dx) with max(|dy|, |dx|) <= floor(radius_px).

    Radius 1 is the 8-neighbourhood (3x3), and so is 1.5; radius 2 is the 5x5 square.
    """
    if radius_px < 0:
        raise ValueError(f"radius_px must be >= 0, got {radius_px}")
    r = int(math.floor(radius_px))
    return np.ones((2 * r + 1, 2 * r + 1), dtype=bool)


def dilate(b: BinaryRaster, radius_px: float) -> BinaryRaster:
    """A pixel is set iff some set pixel lies within ``disc_footprint(radius_px)`` of it."""
    footprint = disc_footprint(radius_px)
    if footprint.shape == (1, 1):
        return BinaryRaster(b.grid, b.mask.copy())
    grown = ndimage.binary_dilation(b.mask, structure=footprint)
    return BinaryRaster(b.grid, grown)


def component_count_blowup(b: BinaryRaster, radius_px: float = DEFAULT_BLOWUP_RADIUS,
                           connectivity: int = DEFAULT_CONNECTIVITY) -> int:
    """Component count after dilating by ``radius_px`` (fragments closer than the margin merge)."""
    _, count = label_mask(dilate(b, radius_px).mask, connectivity)
    return count
