"""
Connectedness and membership loci over parameter planes.

Each pixel of the outer grid renders an inner raster independently; outer rows are spread over
the thread pool and the inner renders run single-threaded.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass

import numpy as np

from quadnet.families import FamilySpec, coupling_field, two_parameter_network
from quadnet.netcore import Network
from quadnet.raster import (
    DEFAULT_ESCAPE_RADIUS,
    DEFAULT_MAX_ITER,
    BinaryRaster,
    GridSpec,
    critical_escape_field,
    equi_m_raster,
    prisoner_mask,
    uni_j_raster,
)
from quadnet.topology.morphology import DEFAULT_BLOWUP_RADIUS, DEFAULT_CONNECTIVITY, component_count_blowup
from quadnet.utils.parallel import ordered_map, resolve_threads, split_range

log = logging.getLogger("quadnet.topology")

DEFAULT_LOCUS_RESOLUTION = (100, 100)


@dataclass(frozen=True, eq=False)
class LocusRaster:
    """Per-pixel component count or membership flag over a c plane or an (a, b) plane."""
    grid: GridSpec
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.int32)
        if data.shape != self.grid.shape:
            raise ValueError(f"locus shape {data.shape} does not match grid {self.grid.shape}")
        if (data < 0).any():
            raise ValueError("locus values must be >= 0")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)


def _over_rows(grid: GridSpec, pixel_value, threads: int | None) -> np.ndarray:
    plane = grid.plane()

    def row(y: int) -> list[int]:
        return [pixel_value(plane[y, x]) for x in range(grid.width)]

    return np.array(ordered_map(row, list(range(grid.height)), threads), dtype=np.int32)


def uni_j_connectedness_locus(net_template: Network, c_grid: GridSpec, z_grid: GridSpec,
                              max_iter: int = DEFAULT_MAX_ITER, escape_radius: float = DEFAULT_ESCAPE_RADIUS,
                              radius_px: float = DEFAULT_BLOWUP_RADIUS, connectivity: int = DEFAULT_CONNECTIVITY,
                              threads: int | None = None) -> LocusRaster:
    """Blow-up component count of the uni-J prisoner mask for every equi-parameter pixel c."""
    t0 = time.perf_counter()

    def count(c: complex) -> int:
        raster = uni_j_raster(net_template.with_params(c), z_grid, max_iter, escape_radius, threads=1)
        return component_count_blowup(prisoner_mask(raster), radius_px, connectivity)

    locus = LocusRaster(c_grid, _over_rows(c_grid, count, threads))
    log.info("uni-J connectedness locus %dx%d done in %.1fs (max count %d)",
             c_grid.width, c_grid.height, time.perf_counter() - t0, int(locus.data.max(initial=0)))
    return locus


def _ab_planes(ab_grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    plane = ab_grid.plane()
    return plane.real.copy(), plane.imag.copy()


def ab_membership_locus(family: FamilySpec, ab_grid: GridSpec, c0: complex,
                        max_iter: int = DEFAULT_MAX_ITER, escape_radius: float = DEFAULT_ESCAPE_RADIUS,
                        threads: int | None = None) -> LocusRaster:
    """
    1 where the critical orbit at equi-parameter ``c0`` stays bounded for the network (a, b),
    a along the real axis of ``ab_grid`` and b along the imaginary axis.
    """
    a_plane, b_plane = _ab_planes(ab_grid)
    field = coupling_field(family, a_plane, b_plane)

    def band(rows: tuple[int, int]) -> np.ndarray:
        y0, y1 = rows
        return critical_escape_field(field[:, :, y0:y1], c0, max_iter, escape_radius)

    bands = split_range(ab_grid.height, resolve_threads(threads))
    data = np.concatenate(ordered_map(band, bands, threads), axis=0)
    locus = LocusRaster(ab_grid, (data == -1).astype(np.int32))
    log.info("(a,b) membership locus at c0=%s: %d of %d pixels bounded", c0, int(locus.data.sum()), data.size)
    return locus


def ab_connectedness_locus(family: FamilySpec, ab_grid: GridSpec, c_grid: GridSpec,
                           max_iter: int = DEFAULT_MAX_ITER, escape_radius: float = DEFAULT_ESCAPE_RADIUS,
                           radius_px: float = DEFAULT_BLOWUP_RADIUS, connectivity: int = DEFAULT_CONNECTIVITY,
                           threads: int | None = None) -> LocusRaster:
    """Blow-up component count of the equi-M prisoner mask for every (a, b) pixel."""
    t0 = time.perf_counter()

    def count(ab: complex) -> int:
        net = two_parameter_network(family, ab.real, ab.imag)
        return equi_m_component_count(net, c_grid, max_iter, escape_radius, radius_px, connectivity)

    locus = LocusRaster(ab_grid, _over_rows(ab_grid, count, threads))
    log.info("(a,b) connectedness locus %dx%d done in %.1fs", ab_grid.width, ab_grid.height,
             time.perf_counter() - t0)
    return locus


def equi_m_component_count(net: Network, c_grid: GridSpec, max_iter: int = DEFAULT_MAX_ITER,
                           escape_radius: float = DEFAULT_ESCAPE_RADIUS, radius_px: float = DEFAULT_BLOWUP_RADIUS,
                           connectivity: int = DEFAULT_CONNECTIVITY) -> int:
    mask: BinaryRaster = prisoner_mask(equi_m_raster(net, c_grid, max_iter, escape_radius, threads=1))
    return component_count_blowup(mask, radius_px, connectivity)
