"""
Pixel grids over a rectangular complex window and the rasters computed on them.

Pixel (col x, row y) samples the centre
    c = (re_min + (x + 0.5) * (re_max - re_min) / width) + i (im_max - (y + 0.5) * (im_max - im_min) / height)
Row 0 is the top of the window. Arrays are indexed ``data[y, x]``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    width: int
    height: int

    def __post_init__(self):
        if not self.re_min < self.re_max:
            raise ValueError(f"re_min must be < re_max, got [{self.re_min}, {self.re_max}]")
        if not self.im_min < self.im_max:
            raise ValueError(f"im_min must be < im_max, got [{self.im_min}, {self.im_max}]")
        if int(self.width) <= 0 or int(self.height) <= 0:
            raise ValueError(f"resolution must be positive, got {self.width}x{self.height}")
        object.__setattr__(self, "width", int(self.width))
        object.__setattr__(self, "height", int(self.height))
        for name in ("re_min", "re_max", "im_min", "im_max"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_window(cls, window: tuple[float, float, float, float], resolution: tuple[int, int]) -> "GridSpec":
        """``window`` = (re_min, re_max, im_min, im_max), ``resolution`` = (width, height)."""
        re_min, re_max, im_min, im_max = window
        width, height = resolution
        return cls(re_min, re_max, im_min, im_max, width, height)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    def re_axis(self) -> np.ndarray:
        x = np.arange(self.width, dtype=float)
        return self.re_min + (x + 0.5) * (self.re_max - self.re_min) / self.width

    def im_axis(self, rows: tuple[int, int] | None = None) -> np.ndarray:
        y0, y1 = rows if rows is not None else (0, self.height)
        y = np.arange(y0, y1, dtype=float)
        return self.im_max - (y + 0.5) * (self.im_max - self.im_min) / self.height

    def plane(self, rows: tuple[int, int] | None = None) -> np.ndarray:
        """Complex pixel centres, shape (rows, width); ``rows`` = (start, stop) selects a band."""
        re = self.re_axis()
        im = self.im_axis(rows)
        out = np.empty((im.shape[0], re.shape[0]), dtype=complex)
        out.real = re[np.newaxis, :]
        out.imag = im[:, np.newaxis]
        return out

    def point(self, x: int, y: int) -> complex:
        """Centre of pixel (col x, row y), same arithmetic as :meth:`plane`."""
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"pixel ({x}, {y}) outside {self.width}x{self.height} grid")
        return complex(self.re_axis()[x], self.im_axis((y, y + 1))[0])

    def pixel_of(self, c: complex) -> tuple[int, int]:
        """(x, y) of the pixel whose cell contains ``c``."""
        c = complex(c)
        fx = (c.real - self.re_min) / (self.re_max - self.re_min) * self.width
        fy = (self.im_max - c.imag) / (self.im_max - self.im_min) * self.height
        x, y = int(np.floor(fx)), int(np.floor(fy))
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"{c} lies outside the window")
        return x, y

    def as_dict(self) -> dict:
        return {
            "re_min": self.re_min, "re_max": self.re_max,
            "im_min": self.im_min, "im_max": self.im_max,
            "width": self.width, "height": self.height,
        }


@dataclass(frozen=True, eq=False)
class EscapeRaster:
    """First escape iteration per pixel; -1 = bounded through ``max_iter``, 0 = outside at the start."""
    grid: GridSpec
    data: np.ndarray
    max_iter: int
    escape_radius: float

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.int32)
        if data.shape != self.grid.shape:
            raise ValueError(f"raster shape {data.shape} does not match grid {self.grid.shape}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def bounded_count(self) -> int:
        return int((self.data == -1).sum())

    def metadata(self) -> dict:
        return {"grid": self.grid.as_dict(), "max_iter": self.max_iter, "escape_radius": self.escape_radius}


@dataclass(frozen=True, eq=False)
class BinaryRaster:
    grid: GridSpec
    mask: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        if mask.shape != self.grid.shape:
            raise ValueError(f"mask shape {mask.shape} does not match grid {self.grid.shape}")
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)

    @property
    def count(self) -> int:
        return int(self.mask.sum())
