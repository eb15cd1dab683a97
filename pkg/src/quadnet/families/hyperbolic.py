"""
Fixed-point hyperbolic components: the main cardioid and the extra restrictions
a network with input cross-talk (simple dual) places on it.

For the simple dual family the Jacobian at a fixed point has eigenvalues 0, 2 z1 and
2 (a z1 + z2). Putting 2 z1 = e^{i theta} on the unit circle gives the cardioid; putting
phi = a z1 + z2 = e^{i tau} / 2 and xi = phi - phi^2 gives the two curves
    c = (2 xi - a - a^2 +/- sqrt(a^2 (a + 1)^2 - 4 a^2 xi)) / 2
i.e. the roots of c^2 + (a^2 + a - 2 xi) c + xi^2 - a xi = 0.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd


@dataclass(frozen=True)
class CurveSample:
    parameter: float
    point: complex
    branch: str = ""


@dataclass(frozen=True)
class DualFixedPoint:
    z1: complex
    z2: complex
    z3: complex
    lambda2: complex
    lambda3: complex
    attracting: bool


def cardioid(theta: float) -> complex:
    """c = e^{i theta}/2 - e^{2 i theta}/4"""
    u = cmath.exp(1j * theta)
    return u / 2 - u * u / 4


def in_main_cardioid(c: complex) -> bool:
    """Strictly inside the main cardioid of the classical Mandelbrot set."""
    x, y = c.real - 0.25, c.imag
    q = x * x + y * y
    return q * (q + x) < 0.25 * y * y


def curve_residual(a: float, tau: float, c: complex) -> complex:
    phi = cmath.exp(1j * tau) / 2
    xi = phi - phi * phi
    return c * c + (a * a + a - 2 * xi) * c + xi * xi - a * xi


def dual_fixedpoint_curves(a: float, tau: float) -> tuple[CurveSample, CurveSample]:
    """Both branches (principal square root) at angle ``tau``."""
    phi = cmath.exp(1j * tau) / 2
    xi = phi - phi * phi
    root = cmath.sqrt(a * a * (a + 1) ** 2 - 4 * a * a * xi)
    base = 2 * xi - a - a * a
    return CurveSample(tau, (base + root) / 2, "+"), CurveSample(tau, (base - root) / 2, "-")


def dual_fixed_points(a: float, c: complex) -> list[DualFixedPoint]:
    """
    The four fixed points of the simple dual network: z1 solves z1^2 + c = z1, then
    phi = a z1 + z2 solves phi^2 - phi + c + a z1 = 0.
    """
    out = []
    s1 = cmath.sqrt(1 - 4 * c)
    for z1 in ((1 - s1) / 2, (1 + s1) / 2):
        s2 = cmath.sqrt(1 - 4 * (c + a * z1))
        for phi in ((1 - s2) / 2, (1 + s2) / 2):
            z2 = phi - a * z1
            z3 = (z1 + z2) ** 2 + c
            lam2, lam3 = 2 * z1, 2 * phi
            out.append(DualFixedPoint(z1, z2, z3, lam2, lam3, abs(lam2) < 1 and abs(lam3) < 1))
    return out


def sample_curves(a: float, points: int = 721) -> pd.DataFrame:
    """Cardioid and both dual branches as polylines: columns curve, parameter, re, im."""
    if points < 2:
        raise ValueError(f"points must be >= 2, got {points}")
    rows = []
    for t in np.linspace(0.0, 2 * math.pi, points):
        c = cardioid(float(t))
        rows.append(("cardioid", float(t), c.real, c.imag))
    for t in np.linspace(0.0, 2 * math.pi, points):
        plus, minus = dual_fixedpoint_curves(a, float(t))
        rows.append(("dual+", float(t), plus.point.real, plus.point.imag))
        rows.append(("dual-", float(t), minus.point.real, minus.point.imag))
    return pd.DataFrame(rows, columns=["curve", "parameter", "re", "im"])
