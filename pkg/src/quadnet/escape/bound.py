"""
Analytic escape radius for diagonally dominant networks.

With A_j = |g_jj| - delta * G_j > 0 (G_j the external input weight of node j), every orbit whose
max-norm exceeds M / delta grows by at least a factor delta per step, where M_j is the larger root
of M^2 A_j^2 - delta^2 M - delta^2 |c_j| = 0 and M = max_j M_j.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from quadnet.errors import PreconditionError
from quadnet.netcore import MultiState, Network, NetworkMap

log = logging.getLogger("quadnet.escape")


@dataclass(frozen=True)
class EscapeBound:
    delta: float
    per_node_A: tuple[float, ...]
    per_node_M: tuple[float, ...]
    M: float
    radius: float
    external_input: tuple[float, ...]

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "per_node_A": list(self.per_node_A),
            "per_node_M": list(self.per_node_M),
            "M": self.M,
            "radius": self.radius,
            "external_input": list(self.external_input),
        }


def _self_and_external(net: Network) -> tuple[np.ndarray, np.ndarray]:
    w = np.abs(net.coupling)
    diag = np.diag(w).copy()
    external = w.sum(axis=1) - diag
    return diag, external


def check_dominance(net: Network) -> bool:
    """|w_jj| > sum_{l != j} |w_jl| for every node (strict)."""
    diag, external = _self_and_external(net)
    return bool(np.all(diag > external))


def max_delta(net: Network) -> float:
    """Supremum of admissible delta: min |g_jj| / G_j over nodes with external input (inf if none)."""
    diag, external = _self_and_external(net)
    mask = external > 0
    if not mask.any():
        return float("inf")
    return float(np.min(diag[mask] / external[mask]))


def default_delta(net: Network) -> float:
    """Midpoint (1 + max_delta) / 2, or 2 when no node has external input."""
    upper = max_delta(net)
    if np.isinf(upper):
        return 2.0
    return (1.0 + upper) / 2.0


def escape_bound(net: Network, delta: float | None = None) -> EscapeBound:
    """
    Per-node thresholds M_j = (delta^2 + sqrt(delta^4 + 4 A_j^2 delta^2 |c_j|)) / (2 A_j^2)
    and the escape radius max_j M_j / delta.

    :raises PreconditionError: network not diagonally dominant, or delta outside (1, max_delta)
    """
    if not check_dominance(net):
        raise PreconditionError("escape bound needs |g_jj| > sum_{l!=j} |g_jl| for every node")
    if delta is None:
        delta = default_delta(net)
    upper = max_delta(net)
    if not (delta > 1 and delta < upper):
        raise PreconditionError(f"delta must satisfy 1 < delta < {upper:g}, got {delta}")

    diag, external = _self_and_external(net)
    A = diag - delta * external
    abs_c = np.abs(net.params)
    d2 = delta * delta
    M = (d2 + np.sqrt(d2 * d2 + 4.0 * A * A * d2 * abs_c)) / (2.0 * A * A)
    m = float(M.max())
    bound = EscapeBound(
        delta=float(delta),
        per_node_A=tuple(float(x) for x in A),
        per_node_M=tuple(float(x) for x in M),
        M=m,
        radius=m / delta,
        external_input=tuple(float(x) for x in external),
    )
    log.debug("escape bound delta=%g M=%g radius=%g", bound.delta, bound.M, bound.radius)
    return bound


def verify_escape(net: Network, bound: EscapeBound, s: MultiState, horizon: int) -> bool:
    """
    Empirical witness: the orbit of ``s`` reaches max-norm > 10 M (or overflows) within ``horizon`` steps.

    :raises PreconditionError: ``s`` is not outside the escape radius
    """
    if not s.max_norm() > bound.radius:
        raise PreconditionError(f"state max-norm {s.max_norm():g} is not above radius {bound.radius:g}")
    target = 10.0 * bound.M
    fmap = NetworkMap(net.coupling, net.params)
    z = np.where(s.overflowed, 0, s.values)
    over = s.overflowed.copy()
    for _ in range(horizon + 1):
        if over.any() or np.abs(z).max() > target:
            return True
        z, over = fmap(z, over)
    return False
