"""
Postcritical finiteness: does the critical orbit return exactly to an earlier value?
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from quadnet.bifurcation.base_map import RealMapFamily
from quadnet.netcore import MultiState, Network, step

log = logging.getLogger("quadnet.bifurcation")

RETURN_TOL = 1e-9
MAX_ITER = 200


@dataclass(frozen=True)
class OrbitClass:
    kind: str  # "periodic" | "preperiodic" | "neither"
    preperiod: int = 0
    period: int = 0


def _classify(values: list[np.ndarray], tol: float) -> OrbitClass:
    for t in range(1, len(values)):
        v = values[t]
        if not np.all(np.isfinite(v)):
            return OrbitClass("neither")
        for i in range(t):
            if np.max(np.abs(v - values[i])) <= tol:
                if i == 0:
                    return OrbitClass("periodic", 0, t)
                return OrbitClass("preperiodic", i, t - i)
    return OrbitClass("neither")


def superattracting_check(target: Network | RealMapFamily, point: complex | float | None = None,
                          node: int | None = None, x0: float = 0.0, tol: float = RETURN_TOL,
                          max_iter: int = MAX_ITER) -> OrbitClass:
    """
    Classify the critical orbit.

    For a network the orbit starts at (0, ..., 0) with ``point`` as equi-parameter (the network's
    own params if None). With ``node`` (1-based) only the nodes feeding that node are compared,
    since their joint state is autonomous. For a map family the orbit of ``x0`` under
    f(.; point) is used.
    """
    values: list[np.ndarray] = []
    if isinstance(target, RealMapFamily):
        if point is None:
            raise ValueError("a map family needs a parameter value")
        orbit = target.iterate(x0, float(point), max_iter)
        values = [np.array([x]) for x in orbit]
    else:
        net = target if point is None else target.with_params(point)
        keep = net.upstream(node) if node is not None else list(range(net.n))
        s = MultiState.zeros(net.n)
        values.append(s.values[keep].copy())
        for _ in range(max_iter):
            s = step(net, s)
            if s.any_overflowed:
                values.append(np.full(len(keep), np.nan))
                break
            values.append(s.values[keep].copy())
    result = _classify(values, tol)
    log.debug("critical orbit at %s: %s", point, result)
    return result


def superattracting_parameters(family: RealMapFamily, p_min: float, p_max: float, max_period: int = 4,
                               steps: int = 4001, x0: float = 0.0) -> list[tuple[float, int]]:
    """
    Parameters where the orbit of x0 returns to x0 after m <= ``max_period`` steps
    (superattracting when x0 is the critical point), with the minimal such m.
    """
    ps = np.linspace(p_min, p_max, steps)
    found: list[tuple[float, int]] = []

    def ret(p: float, m: int) -> float:
        x = x0
        for _ in range(m):
            x = float(family.evaluate(x, p))
        return x - x0

    with np.errstate(over="ignore", invalid="ignore"):
        for m in range(1, max_period + 1):
            vals = np.full(ps.shape, float(x0))
            for _ in range(m):
                vals = family.evaluate(vals, ps)
            h = vals - x0
            for i in np.flatnonzero(np.isfinite(h[:-1]) & np.isfinite(h[1:]) & (h[:-1] * h[1:] <= 0)):
                if h[i] == 0 and i > 0 and h[i - 1] == 0:
                    continue
                p = float(ps[i]) if h[i] == 0 else brentq(ret, ps[i], ps[i + 1], args=(m,), xtol=1e-13)
                if not any(abs(p - q) < 1e-8 for q, _ in found):
                    found.append((p, m))
    return sorted(found)
