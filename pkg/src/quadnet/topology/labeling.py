"""
Connected-component labeling of binary rasters.

Two-pass, run-based: the first pass gives every horizontal run of foreground pixels a provisional
label and merges labels of runs that touch the run above; the second pass resolves each label to
its set root and renumbers roots 1..count in raster order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from quadnet.raster import BinaryRaster


class UnionFind:
    """Disjoint sets over 0..n-1; the smaller root always wins."""

    def __init__(self, n: int = 0):
        self.parents = list(range(n))

    def add(self) -> int:
        self.parents.append(len(self.parents))
        return len(self.parents) - 1

    def find(self, i: int) -> int:
        root = i
        while self.parents[root] != root:
            root = self.parents[root]
        # path compression
        while self.parents[i] != root:
            self.parents[i], i = root, self.parents[i]
        return root

    def union(self, i: int, j: int) -> None:
        root_i = self.find(i)
        root_j = self.find(j)
        if root_i < root_j:
            self.parents[root_j] = root_i
        elif root_i > root_j:
            self.parents[root_i] = root_j


@dataclass(frozen=True, eq=False)
class ComponentCount:
    count: int
    labels: np.ndarray


def _row_runs(row: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Start (inclusive) and stop (exclusive) columns of the True runs of a 1-D mask."""
    padded = np.concatenate(([False], row, [False])).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    return edges[0::2], edges[1::2]


def label_mask(mask: np.ndarray, connectivity: int = 8) -> tuple[np.ndarray, int]:
    """Label a 2-D boolean array; returns (labels, count) with 0 for background."""
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    mask = np.asarray(mask, dtype=bool)
    labels = np.zeros(mask.shape, dtype=np.int32)
    if mask.ndim != 2:
        raise ValueError(f"mask must be 2-D, got shape {mask.shape}")
    # 8-connectivity lets a run touch the previous row one column further on each side
    reach = 1 if connectivity == 8 else 0

    uf = UnionFind()
    runs: list[tuple[int, int, int, int]] = []  # (row, start, stop, provisional label)
    prev: list[tuple[int, int, int]] = []
    for y in range(mask.shape[0]):
        starts, stops = _row_runs(mask[y])
        current = []
        i = 0
        for s, e in zip(starts.tolist(), stops.tolist()):
            lab = uf.add()
            # skip runs above that end before this one can touch them
            while i < len(prev) and prev[i][1] + reach <= s:
                i += 1
            m = i
            while m < len(prev) and prev[m][0] < e + reach:
                uf.union(lab, prev[m][2])
                m += 1
            current.append((s, e, lab))
            runs.append((y, s, e, lab))
        prev = current

    final: dict[int, int] = {}
    for y, s, e, lab in runs:
        root = uf.find(lab)
        if root not in final:
            final[root] = len(final) + 1
        labels[y, s:e] = final[root]
    return labels, len(final)


def count_components(b: BinaryRaster | np.ndarray, connectivity: int = 8) -> ComponentCount:
    """Components of the foreground; an empty mask has count 0."""
    mask = b.mask if isinstance(b, BinaryRaster) else b
    labels, count = label_mask(mask, connectivity)
    return ComponentCount(count, labels)
