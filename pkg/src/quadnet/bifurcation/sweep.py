"""
Bifurcation sweeps and boundedness windows over a parameter range.

Parameters are iterated side by side as one numpy array; escaped entries are frozen at 0 so
that later iterations cannot overflow.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator

import numpy as np
import pandas as pd

from quadnet.bifurcation.base_map import RealMapFamily
from quadnet.utils.parallel import ordered_map, resolve_threads, split_range

log = logging.getLogger("quadnet.bifurcation")

DEFAULT_TRANSIENT = 1000
DEFAULT_SAMPLES = 200
DEFAULT_BOUND = 100.0
DEFAULT_STEPS = 2000
DEFAULT_REFINE_TOL = 1e-4


@dataclass(frozen=True)
class SweepRecord:
    param: float
    escaped: bool
    attractor_samples: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class BifurcationSweep:
    """``samples`` has shape (steps, S) and holds nan on escaped rows."""
    family: str
    param_values: np.ndarray
    escaped: np.ndarray
    samples: np.ndarray
    transient: int
    n_samples: int
    x0: float
    bound: float

    def records(self) -> Iterator[SweepRecord]:
        for p, esc, row in zip(self.param_values, self.escaped, self.samples):
            yield SweepRecord(float(p), bool(esc), () if esc else tuple(float(v) for v in row))

    def to_frame(self) -> pd.DataFrame:
        cols = {"p": self.param_values, "escaped": self.escaped}
        for i in range(self.n_samples):
            cols[f"s{i}"] = self.samples[:, i]
        return pd.DataFrame(cols)


def _iterate(family: RealMapFamily, params: np.ndarray, x0: float, count: int, bound: float,
             record: int = 0) -> tuple[np.ndarray, np.ndarray]:
    xi = np.full(params.shape, float(x0))
    escaped = np.abs(xi) > bound
    xi[escaped] = 0.0
    kept = np.full((record, params.shape[0]), np.nan)
    with np.errstate(over="ignore", invalid="ignore"):
        for t in range(count + record):
            xi = family.evaluate(xi, params)
            out = ~(np.abs(xi) <= bound)
            escaped |= out
            xi = np.where(escaped, 0.0, xi)
            if t >= count:
                kept[t - count] = np.where(escaped, np.nan, xi)
    return escaped, kept


def sweep(family: RealMapFamily, p_min: float, p_max: float, steps: int = DEFAULT_STEPS,
          transient: int = DEFAULT_TRANSIENT, samples: int = DEFAULT_SAMPLES, x0: float = 0.0,
          bound: float = DEFAULT_BOUND, threads: int | None = None) -> BifurcationSweep:
    """Discard ``transient`` iterates from x0, keep the next ``samples``; escape if |xi| > bound at any time."""
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    if transient < 1 or samples < 1:
        raise ValueError("transient and samples must be >= 1")
    if not bound > 0:
        raise ValueError(f"bound must be > 0, got {bound}")
    params = np.linspace(p_min, p_max, steps)
    chunks = split_range(steps, resolve_threads(threads))
    parts = ordered_map(lambda r: _iterate(family, params[r[0]:r[1]], x0, transient, bound, samples),
                        chunks, threads)
    escaped = np.concatenate([e for e, _ in parts])
    kept = np.concatenate([k for _, k in parts], axis=1).T
    kept[escaped] = np.nan
    log.info("%s sweep over [%g, %g]: %d of %d parameters bounded",
             family.kind, p_min, p_max, int((~escaped).sum()), steps)
    return BifurcationSweep(family.kind, params, escaped, kept, transient, samples, float(x0), float(bound))


def _bounded(family: RealMapFamily, params: np.ndarray, x0: float, t_max: int, bound: float) -> np.ndarray:
    escaped, _ = _iterate(family, np.atleast_1d(np.asarray(params, dtype=float)), x0, t_max, bound)
    return ~escaped


def _refine_edge(family: RealMapFamily, inside: float, outside: float, x0: float, t_max: int,
                 bound: float, tol: float) -> float:
    while abs(outside - inside) > tol:
        mid = 0.5 * (inside + outside)
        if _bounded(family, np.array([mid]), x0, t_max, bound)[0]:
            inside = mid
        else:
            outside = mid
    return inside


def bounded_windows(family: RealMapFamily, p_min: float, p_max: float, coarse_steps: int = DEFAULT_STEPS,
                    refine_tol: float = DEFAULT_REFINE_TOL, x0: float = 0.0, t_max: int = DEFAULT_TRANSIENT,
                    bound: float = DEFAULT_BOUND) -> list[tuple[float, float]]:
    """
    Maximal parameter intervals on which the orbit of x0 stays within ``bound`` for ``t_max``
    iterations, found on a coarse grid and refined by bisection to ``refine_tol``.
    """
    if not refine_tol > 0:
        raise ValueError(f"refine_tol must be > 0, got {refine_tol}")
    params = np.linspace(p_min, p_max, coarse_steps)
    ok = _bounded(family, params, x0, t_max, bound)
    windows = []
    i = 0
    while i < len(params):
        if not ok[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(params) and ok[j + 1]:
            j += 1
        lo = params[i] if i == 0 else _refine_edge(family, params[i], params[i - 1], x0, t_max, bound, refine_tol)
        hi = params[j] if j == len(params) - 1 else _refine_edge(family, params[j], params[j + 1], x0, t_max,
                                                                 bound, refine_tol)
        windows.append((float(lo), float(hi)))
        i = j + 1
    log.info("%s bounded windows: %s", family.kind, ", ".join(f"[{lo:.4f}, {hi:.4f}]" for lo, hi in windows))
    return windows
