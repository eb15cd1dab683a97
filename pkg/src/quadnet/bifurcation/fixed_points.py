"""
Fixed-point continuation with fold (LP) and period-doubling (PD) detection.

At every parameter step each live branch is continued by Newton from its previous point; new
roots found by a sign-change scan on an xi grid start new branches. A branch whose Newton solve
fails is refined by bisection on the parameter down to the last point where it still exists; if
the slope there is close to +1 the end is a fold (LP), otherwise the branch is just terminated.
Slopes crossing -1 (PD) or +1 (transcritical) between steps are bisection-refined.

The scan is run forwards and backwards so that folds where a pair of branches is born are found
as well as folds where a pair disappears.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy.optimize import brentq

from quadnet.bifurcation.base_map import RealMapFamily

log = logging.getLogger("quadnet.bifurcation")

RESIDUAL_TOL = 1e-10
LP_SLOPE_TOL = 0.05
DEFAULT_XI_RANGE = (-3.0, 3.0)
DEFAULT_SEED_POINTS = 2001


@dataclass(frozen=True)
class FixedPointRecord:
    param: float
    xi: float
    slope: float
    stability: str
    event: str = "none"
    branch: int = -1


@dataclass(frozen=True)
class BranchEnd:
    branch: int
    param: float
    xi: float
    reason: str


@dataclass
class FixedPointScan:
    family: str
    records: list[FixedPointRecord] = field(default_factory=list)
    terminations: list[BranchEnd] = field(default_factory=list)

    def events(self, kind: str | None = None) -> list[FixedPointRecord]:
        return [r for r in self.records if r.event != "none" and (kind is None or r.event == kind)]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(r.param, r.xi, r.slope, r.stability, r.event, r.branch) for r in self.records],
            columns=["p", "xi", "slope", "stability", "event", "branch"],
        )


def _stability(slope: float) -> str:
    return "stable" if abs(slope) < 1 else "unstable"


def _record(family: RealMapFamily, p: float, xi: float, event: str, branch: int) -> FixedPointRecord:
    s = float(family.derivative(xi, p))
    return FixedPointRecord(float(p), float(xi), s, _stability(s), event, branch)


def newton_fixed_point(family: RealMapFamily, xi0: float, p: float, tol: float, max_iter: int = 100) -> float | None:
    """Solve f(xi; p) = xi from ``xi0``; None when Newton fails to converge."""
    xi = float(xi0)
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(max_iter):
            h = float(family.evaluate(xi, p)) - xi
            dh = float(family.derivative(xi, p)) - 1.0
            if not (np.isfinite(h) and np.isfinite(dh)) or dh == 0.0:
                return None
            step = h / dh
            xi -= step
            if abs(xi) > 1e6:
                return None
            if abs(step) <= tol * max(1.0, abs(xi)):
                if abs(float(family.evaluate(xi, p)) - xi) <= RESIDUAL_TOL:
                    return xi
    return None


def all_fixed_points(family: RealMapFamily, p: float, tol: float, xi_range=DEFAULT_XI_RANGE,
                     seed_points: int = DEFAULT_SEED_POINTS) -> list[float]:
    """Every fixed point in ``xi_range`` with a sign change of f - xi on the seed grid."""
    xs = np.linspace(xi_range[0], xi_range[1], seed_points)
    with np.errstate(over="ignore", invalid="ignore"):
        h = family.evaluate(xs, p) - xs
    roots = []
    for i in np.flatnonzero(h == 0):
        roots.append(float(xs[i]))
    for i in np.flatnonzero(h[:-1] * h[1:] < 0):
        guess = brentq(lambda x: float(family.evaluate(x, p)) - x, xs[i], xs[i + 1], xtol=tol)
        polished = newton_fixed_point(family, guess, p, tol)
        roots.append(polished if polished is not None else guess)
    return sorted(roots)


def _refine_end(family, p_good, xi_good, p_bad, tol, jump):
    while abs(p_bad - p_good) > tol:
        pm = 0.5 * (p_good + p_bad)
        xm = newton_fixed_point(family, xi_good, pm, tol)
        if xm is not None and abs(xm - xi_good) <= jump:
            p_good, xi_good = pm, xm
        else:
            p_bad = pm
    return p_good, xi_good


def _refine_crossing(family, pa, xa, sa, pb, target, tol):
    while abs(pb - pa) > tol:
        pm = 0.5 * (pa + pb)
        xm = newton_fixed_point(family, xa, pm, tol)
        if xm is None:
            break
        sm = float(family.derivative(xm, pm))
        if (sa - target) * (sm - target) <= 0:
            pb = pm
        else:
            pa, xa, sa = pm, xm, sm
    return pa, xa


@dataclass
class _Branch:
    ident: int
    points: list[tuple[float, float, float]]
    alive: bool = True


def _continue(family: RealMapFamily, params: np.ndarray, tol: float, xi_range, seed_points: int,
              jump: float, id_offset: int = 0):
    branches: list[_Branch] = []
    events: list[FixedPointRecord] = []
    ends: list[BranchEnd] = []
    for p in params:
        p = float(p)
        claimed: list[float] = []
        for br in branches:
            if not br.alive:
                continue
            p_prev, xi_prev, s_prev = br.points[-1]
            xi = newton_fixed_point(family, xi_prev, p, tol)
            if xi is None or abs(xi - xi_prev) > jump or any(abs(xi - c) < 1e-7 for c in claimed):
                br.alive = False
                pe, xe = _refine_end(family, p_prev, xi_prev, p, tol, jump)
                se = float(family.derivative(xe, pe))
                if abs(se - 1.0) < LP_SLOPE_TOL:
                    events.append(_record(family, pe, xe, "LP", br.ident))
                    reason = "fold"
                else:
                    reason = "newton-diverged" if xi is None else "merged"
                ends.append(BranchEnd(br.ident, pe, xe, reason))
                log.debug("branch %d ends at p=%.10g xi=%.8g (%s)", br.ident, pe, xe, reason)
                continue
            s = float(family.derivative(xi, p))
            for target, kind in ((-1.0, "PD"), (1.0, "LP")):
                if (s_prev - target) * (s - target) < 0:
                    pc, xc = _refine_crossing(family, p_prev, xi_prev, s_prev, p, target, tol)
                    events.append(_record(family, pc, xc, kind, br.ident))
            br.points.append((p, xi, s))
            claimed.append(xi)
        for r in all_fixed_points(family, p, tol, xi_range, seed_points):
            if all(abs(r - c) > 1e-6 for c in claimed):
                s = float(family.derivative(r, p))
                branches.append(_Branch(id_offset + len(branches), [(p, r, s)]))
                claimed.append(r)
    return branches, events, ends


def _dedupe(events: list[FixedPointRecord], tol: float) -> list[FixedPointRecord]:
    out: list[FixedPointRecord] = []
    p_tol = max(1e3 * tol, 1e-7)
    for e in sorted(events, key=lambda r: (r.param, r.xi)):
        if any(o.event == e.event and abs(o.param - e.param) <= p_tol and abs(o.xi - e.xi) <= 1e-3 for o in out):
            continue
        out.append(e)
    return out


def fixed_point_scan(family: RealMapFamily, p_min: float, p_max: float, steps: int = 2000,
                     newton_tol: float = 1e-10, xi_range: tuple[float, float] = DEFAULT_XI_RANGE,
                     seed_points: int = DEFAULT_SEED_POINTS, jump: float = 0.25) -> FixedPointScan:
    """
    Fixed-point branches of ``family`` over [p_min, p_max] with LP / PD events.

    Records hold every continued point (event "none") plus the refined events; terminations list
    where and why each forward branch ended.
    """
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    params = np.linspace(p_min, p_max, steps)
    fwd, fwd_events, ends = _continue(family, params, newton_tol, xi_range, seed_points, jump)
    _, bwd_events, _ = _continue(family, params[::-1], newton_tol, xi_range, seed_points, jump, id_offset=10_000)
    # a fold seen from its birth side carries no forward branch id
    bwd_events = [FixedPointRecord(e.param, e.xi, e.slope, e.stability, e.event, -1) for e in bwd_events]
    events = _dedupe(fwd_events + bwd_events, newton_tol)

    records = [
        FixedPointRecord(p, xi, s, _stability(s), "none", br.ident)
        for br in fwd for (p, xi, s) in br.points
    ]
    records.extend(events)
    records.sort(key=lambda r: (r.param, r.xi, r.event))
    scan = FixedPointScan(family.kind, records, ends)
    log.info("%s fixed-point scan: %d branches, %d LP, %d PD", family.kind, len(fwd),
             len(scan.events("LP")), len(scan.events("PD")))
    for end in ends:
        if end.reason != "fold":
            log.warning("branch %d terminated at p=%.6g (%s)", end.branch, end.param, end.reason)
    return scan
