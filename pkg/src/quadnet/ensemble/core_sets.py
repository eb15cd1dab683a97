"""
Core (average) sets: per-pixel fraction of configurations whose orbit stays bounded.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from quadnet.ensemble.configurations import ConfigurationFamily, enumerate_configurations
from quadnet.netcore import Network
from quadnet.raster import (
    DEFAULT_ESCAPE_RADIUS,
    DEFAULT_MAX_ITER,
    BinaryRaster,
    GridSpec,
    equi_m_raster,
    uni_j_raster,
)
from quadnet.utils.parallel import ordered_map

log = logging.getLogger("quadnet.ensemble")


@dataclass(frozen=True, eq=False)
class FractionRaster:
    grid: GridSpec
    bounded_counts: np.ndarray
    config_count: int

    @property
    def data(self) -> np.ndarray:
        return self.bounded_counts / self.config_count

    def core_mask(self) -> BinaryRaster:
        """Pixels bounded under every configuration."""
        return BinaryRaster(self.grid, self.bounded_counts == self.config_count)


def _configs(family: ConfigurationFamily | Sequence[Network]) -> list[Network]:
    if isinstance(family, ConfigurationFamily):
        return enumerate_configurations(family)
    return list(family)


def _accumulate(grid: GridSpec, nets: list[Network], render, threads: int | None) -> FractionRaster:
    if not nets:
        raise ValueError("core set of an empty configuration family")
    # inner renders are single-threaded; configurations are spread over the pool
    masks = ordered_map(lambda net: render(net).data == -1, nets, threads)
    counts = np.zeros(grid.shape, dtype=np.int64)
    for m in masks:
        counts += m
    return FractionRaster(grid, counts, len(nets))


def core_uni_j(family: ConfigurationFamily | Sequence[Network], c: complex, z_grid: GridSpec,
               max_iter: int = DEFAULT_MAX_ITER, escape_radius: float = DEFAULT_ESCAPE_RADIUS,
               threads: int | None = None) -> FractionRaster:
    """Fraction of configurations for which (z0, ..., z0) stays bounded at equi-parameter ``c``."""
    nets = [net.with_params(c) for net in _configs(family)]
    out = _accumulate(z_grid, nets, lambda net: uni_j_raster(net, z_grid, max_iter, escape_radius, threads=1), threads)
    log.info("core uni-J at c=%s over %d configurations: %d core pixels", c, out.config_count, out.core_mask().count)
    return out


def core_equi_m(family: ConfigurationFamily | Sequence[Network], c_grid: GridSpec,
                max_iter: int = DEFAULT_MAX_ITER, escape_radius: float = DEFAULT_ESCAPE_RADIUS,
                threads: int | None = None) -> FractionRaster:
    """Fraction of configurations whose critical orbit stays bounded at each equi-parameter pixel."""
    nets = _configs(family)
    out = _accumulate(c_grid, nets, lambda net: equi_m_raster(net, c_grid, max_iter, escape_radius, threads=1), threads)
    log.info("core equi-M over %d configurations: %d core pixels", out.config_count, out.core_mask().count)
    return out
