from __future__ import annotations

from collections import deque

import numpy as np
import pytest

from quadnet.families import self_drive, single
from quadnet.raster import GridSpec


@pytest.fixture
def drive_net():
    """Self-drive network at a = b = -1, c = -1 (period-4 critical orbit)."""
    return self_drive(-1.0, -1.0, -1.0)


@pytest.fixture
def mandel_net():
    return single(0j)


@pytest.fixture
def small_c_grid():
    return GridSpec.from_window((-2.0, 1.0, -1.5, 1.5), (48, 48))


@pytest.fixture
def small_z_grid():
    return GridSpec.from_window((-2.0, 2.0, -2.0, 2.0), (32, 32))


def naive_escape(c_plane: np.ndarray, max_iter: int, escape_radius: float) -> np.ndarray:
    """Plain z <- z^2 + c escape times, written without the network kernel."""
    z = np.zeros(c_plane.shape, dtype=complex)
    out = np.full(c_plane.shape, -1, dtype=np.int32)
    r2 = escape_radius * escape_radius
    with np.errstate(over="ignore", invalid="ignore"):
        for t in range(1, max_iter + 1):
            z = z * z + c_plane
            fresh = (out == -1) & (z.real * z.real + z.imag * z.imag > r2)
            out[fresh] = t
    return out


def flood_fill_labels(mask: np.ndarray, connectivity: int) -> tuple[np.ndarray, int]:
    """BFS labelling in row-major order of first pixel."""
    if connectivity == 8:
        offsets = [(dy, dx) for dy in (-1, 0, 1) for dx in (-1, 0, 1) if (dy, dx) != (0, 0)]
    else:
        offsets = [(-1, 0), (1, 0), (0, -1), (0, 1)]
    h, w = mask.shape
    labels = np.zeros((h, w), dtype=np.int32)
    count = 0
    for y in range(h):
        for x in range(w):
            if not mask[y, x] or labels[y, x]:
                continue
            count += 1
            labels[y, x] = count
            queue = deque([(y, x)])
            while queue:
                cy, cx = queue.popleft()
                for dy, dx in offsets:
                    ny, nx = cy + dy, cx + dx
                    if 0 <= ny < h and 0 <= nx < w and mask[ny, nx] and not labels[ny, nx]:
                        labels[ny, nx] = count
                        queue.append((ny, nx))
    return labels, count
