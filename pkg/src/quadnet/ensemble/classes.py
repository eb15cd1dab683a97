"""
Spectral and asymptotic class partitions of configuration lists.

Asymptotic classes group configurations whose uni-J escape rasters are identical entry by entry;
spectral classes group configurations whose weighted adjacency matrices share an eigenvalue
multiset (rounded to 1e-6).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import pandas as pd

from quadnet.ensemble.configurations import bitmask_hex
from quadnet.errors import SpectralError
from quadnet.netcore import Network
from quadnet.raster import DEFAULT_ESCAPE_RADIUS, DEFAULT_MAX_ITER, GridSpec, uni_j_raster
from quadnet.utils.parallel import ordered_map
from quadnet.utils.reproducibility import array_fingerprint

log = logging.getLogger("quadnet.ensemble")

SPECTRAL_DECIMALS = 6
SPECTRAL_ZERO_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class ClassPartition:
    """Class ids are numbered 1, 2, ... in order of first appearance."""
    members: tuple[Network, ...]
    class_ids: tuple[int, ...]
    kind: str
    settings: dict = field(default_factory=dict)

    @property
    def n_classes(self) -> int:
        return len(set(self.class_ids))

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i, cid in enumerate(self.class_ids):
            out.setdefault(cid, []).append(i)
        return [out[k] for k in sorted(out)]

    def as_set_partition(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(g) for g in self.groups())


def _number(keys: list) -> tuple[int, ...]:
    ids: dict = {}
    return tuple(ids.setdefault(k, len(ids) + 1) for k in keys)


def spectral_key(matrix: np.ndarray, decimals: int = SPECTRAL_DECIMALS) -> tuple[tuple[float, float], ...]:
    """Sorted (Re, Im) eigenvalue pairs, near-zero parts snapped to 0 and rounded."""
    try:
        vals = np.linalg.eigvals(np.asarray(matrix, dtype=float))
    except np.linalg.LinAlgError as e:
        raise SpectralError(f"eigenvalue computation failed for matrix\n{np.array2string(np.asarray(matrix))}") from e
    re = np.where(np.abs(vals.real) < SPECTRAL_ZERO_TOL, 0.0, vals.real)
    im = np.where(np.abs(vals.imag) < SPECTRAL_ZERO_TOL, 0.0, vals.imag)
    # + 0.0 turns -0.0 into 0.0
    pairs = [(round(float(r), decimals) + 0.0, round(float(i), decimals) + 0.0) for r, i in zip(re, im)]
    return tuple(sorted(pairs))


def partition_spectral(configs: Sequence[Network]) -> ClassPartition:
    keys = [spectral_key(net.coupling) for net in configs]
    part = ClassPartition(tuple(configs), _number(keys), "spectral", {"decimals": SPECTRAL_DECIMALS})
    log.info("spectral partition: %d configurations, %d classes", len(configs), part.n_classes)
    return part


def partition_asymptotic(configs: Sequence[Network], c: complex, z_grid: GridSpec,
                         max_iter: int = DEFAULT_MAX_ITER, escape_radius: float = DEFAULT_ESCAPE_RADIUS,
                         threads: int | None = None) -> ClassPartition:
    """Classes of exactly equal uni-J escape rasters at equi-parameter ``c`` (hash, then verify)."""
    rasters = ordered_map(
        lambda net: uni_j_raster(net.with_params(c), z_grid, max_iter, escape_radius, threads=1).data,
        list(configs), threads,
    )
    buckets: dict[str, list[int]] = {}
    keys: list[tuple[str, int]] = []
    for i, data in enumerate(rasters):
        h = array_fingerprint(data)
        reps = buckets.setdefault(h, [])
        for slot, rep in enumerate(reps):
            if np.array_equal(rasters[rep], data):
                keys.append((h, slot))
                break
        else:
            reps.append(i)
            keys.append((h, len(reps) - 1))
    settings = {"c": [complex(c).real, complex(c).imag], "grid": z_grid.as_dict(),
                "max_iter": max_iter, "escape_radius": escape_radius}
    part = ClassPartition(tuple(configs), _number(keys), "asymptotic", settings)
    log.info("asymptotic partition at c=%s: %d configurations, %d classes", c, len(configs), part.n_classes)
    return part


def cross_classes(spectral: ClassPartition, asymptotic: ClassPartition) -> pd.DataFrame:
    """Counts of configurations per (spectral class, asymptotic class) pair."""
    if len(spectral.class_ids) != len(asymptotic.class_ids):
        raise ValueError("partitions cover different configuration lists")
    df = pd.DataFrame({"spectral": spectral.class_ids, "asymptotic": asymptotic.class_ids})
    return df.groupby(["spectral", "asymptotic"]).size().rename("count").reset_index()


def partition_frame(spectral: ClassPartition, asymptotic: ClassPartition) -> pd.DataFrame:
    """One row per configuration: index, row-major hex bitmask, spectral class, asymptotic class."""
    return pd.DataFrame({
        "index": range(len(spectral.members)),
        "bitmask": [bitmask_hex(net) for net in spectral.members],
        "spectral_class": spectral.class_ids,
        "asymptotic_class": asymptotic.class_ids,
    })


@dataclass(frozen=True)
class InvarianceReport:
    all_identical: bool
    partitions: tuple[ClassPartition, ...]
    diffs: tuple[tuple[complex, complex], ...]
    first_mismatch: tuple[complex, complex] | None


def class_invariance_experiment(configs: Sequence[Network], c_list: Sequence[complex], z_grid: GridSpec,
                                max_iter: int = DEFAULT_MAX_ITER, escape_radius: float = DEFAULT_ESCAPE_RADIUS,
                                threads: int | None = None) -> InvarianceReport:
    """Compare the asymptotic partitions of the same configurations at several equi-parameters."""
    if len(c_list) < 2:
        raise ValueError("class invariance needs at least two equi-parameters")
    parts = tuple(partition_asymptotic(configs, c, z_grid, max_iter, escape_radius, threads) for c in c_list)
    diffs = []
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if parts[i].as_set_partition() != parts[j].as_set_partition():
                diffs.append((complex(c_list[i]), complex(c_list[j])))
                log.warning("asymptotic classes differ between c=%s (%d classes) and c=%s (%d classes)",
                            c_list[i], parts[i].n_classes, c_list[j], parts[j].n_classes)
    return InvarianceReport(not diffs, parts, tuple(diffs), diffs[0] if diffs else None)
