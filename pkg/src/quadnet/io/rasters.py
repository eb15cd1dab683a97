"""
Raster persistence: binary PPM images and float/int grids as .npy with a JSON sidecar.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from quadnet.io.writers import ensure_parent, sidecar_path, write_sidecar
from quadnet.raster import EscapeRaster

# cycled for the banded palette, escape iteration 1 takes the first colour
_BANDS = np.array(
    [
        (66, 30, 15), (25, 7, 26), (9, 1, 47), (4, 4, 73),
        (0, 7, 100), (12, 44, 138), (24, 82, 177), (57, 125, 209),
        (134, 181, 229), (211, 236, 248), (241, 233, 191), (248, 201, 95),
        (255, 170, 0), (204, 128, 0), (153, 87, 0), (106, 52, 3),
    ],
    dtype=np.uint8,
)

PALETTES = ("grayscale", "banded")


def colorize(r: EscapeRaster, palette: str = "grayscale") -> np.ndarray:
    """RGB uint8 image (height, width, 3); bounded pixels are black."""
    data = r.data
    bounded = data == -1
    if palette == "grayscale":
        t = np.clip(data, 0, None) / r.max_iter
        level = np.rint(255.0 * (1.0 - t)).astype(np.uint8)
        rgb = np.repeat(level[..., np.newaxis], 3, axis=2)
    elif palette == "banded":
        rgb = _BANDS[np.mod(np.clip(data, 0, None), len(_BANDS))]
    else:
        raise ValueError(f"unknown palette {palette!r}; choose from {', '.join(PALETTES)}")
    rgb = rgb.copy()
    rgb[bounded] = 0
    return rgb


def write_ppm(r: EscapeRaster, palette: str, path: str | Path) -> Path:
    """Binary PPM (P6), maxval 255."""
    rgb = colorize(r, palette)
    p = ensure_parent(path)
    header = f"P6\n{r.grid.width} {r.grid.height}\n255\n".encode("ascii")
    p.write_bytes(header + rgb.tobytes())
    return p


def read_ppm(path: str | Path) -> np.ndarray:
    """Inverse of :func:`write_ppm` for the header layout it writes."""
    blob = Path(path).read_bytes()
    magic, dims, maxval, body = blob.split(b"\n", 3)
    if magic != b"P6" or maxval != b"255":
        raise ValueError(f"{path}: not a P6 file with maxval 255")
    width, height = (int(v) for v in dims.split())
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width, 3)


def write_grid(path: str | Path, data: np.ndarray, job: dict, metadata: dict | None = None) -> Path:
    """Save ``data`` as .npy (bit-exact) with a JSON sidecar."""
    p = ensure_parent(path)
    with p.open("wb") as f:
        np.save(f, np.asarray(data), allow_pickle=False)
    write_sidecar(p, job, {"dtype": str(np.asarray(data).dtype), "shape": list(np.shape(data)), **(metadata or {})})
    return p


def read_grid(path: str | Path) -> tuple[np.ndarray, dict]:
    p = Path(path)
    data = np.load(p, allow_pickle=False)
    meta_path = sidecar_path(p)
    meta = json.loads(meta_path.read_text(encoding="utf-8")) if meta_path.exists() else {}
    return data, meta
