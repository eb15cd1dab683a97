"""
Escape-time rendering for equi-M, node-wise M and uni-J rasters.

Rows are split into bands and rendered on a thread pool; every pixel is computed independently,
so the raster is bit-identical for any worker count.
"""
from __future__ import annotations

import logging
import time
from typing import Callable

import numpy as np

from quadnet.netcore import Network, NetworkMap, check_node
from quadnet.raster.grid import EscapeRaster, GridSpec
from quadnet.utils.parallel import ordered_map, resolve_threads, split_range

log = logging.getLogger("quadnet.raster")

DEFAULT_MAX_ITER = 50
DEFAULT_ESCAPE_RADIUS = 20.0
DEFAULT_RESOLUTION = (200, 200)


def check_escape_args(max_iter: int, escape_radius: float) -> None:
    if int(max_iter) < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    if not escape_radius > 0:
        raise ValueError(f"escape_radius must be > 0, got {escape_radius}")


def escape_times(fmap: NetworkMap, z: np.ndarray, over: np.ndarray, max_iter: int,
                 escape_radius: float, node: int | None = None) -> np.ndarray:
    """
    First escape iteration for every pixel of a state array ``(n, *pixels)``.

    The max-norm over all nodes is tested unless ``node`` (0-based) is given, in which case only
    that node is watched. Overflow counts as escape. Returns int32 with -1 for bounded pixels.
    """
    r2 = escape_radius * escape_radius

    def outside(z: np.ndarray, over: np.ndarray) -> np.ndarray:
        if node is None:
            return over.any(axis=0) | (z.real * z.real + z.imag * z.imag > r2).any(axis=0)
        zk = z[node]
        return over[node] | (zk.real * zk.real + zk.imag * zk.imag > r2)

    data = np.full(z.shape[1:], -1, dtype=np.int32)
    done = outside(z, over)
    data[done] = 0
    for t in range(1, max_iter + 1):
        if done.all():
            break
        z, over = fmap(z, over)
        fresh = outside(z, over) & ~done
        data[fresh] = t
        done |= fresh
    return data


def _render(grid: GridSpec, max_iter: int, escape_radius: float, threads: int | None,
            band: Callable[[np.ndarray], np.ndarray], label: str) -> EscapeRaster:
    check_escape_args(max_iter, escape_radius)
    workers = resolve_threads(threads)
    bands = split_range(grid.height, workers)
    t0 = time.perf_counter()
    parts = ordered_map(lambda rows: band(grid.plane(rows)), bands, workers)
    data = np.concatenate(parts, axis=0)
    raster = EscapeRaster(grid, data, int(max_iter), float(escape_radius))
    log.debug("%s %dx%d rendered in %.3fs (%d bands), bounded=%d",
              label, grid.width, grid.height, time.perf_counter() - t0, len(bands), raster.bounded_count)
    return raster


def _critical_band(net: Network, plane: np.ndarray, max_iter: int, escape_radius: float,
                   node: int | None) -> np.ndarray:
    n = net.n
    params = np.broadcast_to(plane, (n,) + plane.shape)
    z = np.zeros((n,) + plane.shape, dtype=complex)
    over = np.zeros(z.shape, dtype=bool)
    return escape_times(NetworkMap(net.coupling, params), z, over, max_iter, escape_radius, node)


def equi_m_raster(net_template: Network, grid: GridSpec, max_iter: int = DEFAULT_MAX_ITER,
                  escape_radius: float = DEFAULT_ESCAPE_RADIUS, threads: int | None = None) -> EscapeRaster:
    """Critical orbit from (0, ..., 0) with every c_j set to the pixel value; template params are ignored."""
    return _render(
        grid, max_iter, escape_radius, threads,
        lambda plane: _critical_band(net_template, plane, max_iter, escape_radius, None),
        "equi-m",
    )


def node_m_raster(net_template: Network, node: int, grid: GridSpec, max_iter: int = DEFAULT_MAX_ITER,
                  escape_radius: float = DEFAULT_ESCAPE_RADIUS, threads: int | None = None) -> EscapeRaster:
    """As :func:`equi_m_raster`, judged on |z_k| only (``node`` is 1-based)."""
    k = check_node(node, net_template.n)
    return _render(
        grid, max_iter, escape_radius, threads,
        lambda plane: _critical_band(net_template, plane, max_iter, escape_radius, k),
        f"node-m[{node}]",
    )


def uni_j_raster(net: Network, grid: GridSpec, max_iter: int = DEFAULT_MAX_ITER,
                 escape_radius: float = DEFAULT_ESCAPE_RADIUS, threads: int | None = None) -> EscapeRaster:
    """Orbit of the diagonal lift (z0, ..., z0) for every pixel z0, at the network's own params."""

    def band(plane: np.ndarray) -> np.ndarray:
        z = np.repeat(plane[np.newaxis], net.n, axis=0)
        over = np.zeros(z.shape, dtype=bool)
        return escape_times(NetworkMap(net.coupling, net.params), z, over, max_iter, escape_radius)

    return _render(grid, max_iter, escape_radius, threads, band, "uni-j")


def critical_escape_field(coupling: np.ndarray, c0: complex, max_iter: int = DEFAULT_MAX_ITER,
                          escape_radius: float = DEFAULT_ESCAPE_RADIUS) -> np.ndarray:
    """
    Escape iterations of the critical orbit for a field of networks ``coupling`` (n, n, *pixels)
    sharing the equi-parameter ``c0``.
    """
    check_escape_args(max_iter, escape_radius)
    n = coupling.shape[0]
    pixel_shape = coupling.shape[2:]
    z = np.zeros((n,) + pixel_shape, dtype=complex)
    over = np.zeros(z.shape, dtype=bool)
    params = np.full(n, complex(c0), dtype=complex)
    return escape_times(NetworkMap(coupling, params), z, over, max_iter, escape_radius)
