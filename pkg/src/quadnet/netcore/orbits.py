"""
Single-state operations: one step, orbit records and node-wise boundedness.
"""
from __future__ import annotations

import logging

import numpy as np

from quadnet.netcore.kernel import NetworkMap
from quadnet.netcore.network import MultiState, Network, OrbitRecord, check_node

log = logging.getLogger("quadnet.netcore")


def _map_for(net: Network) -> NetworkMap:
    return NetworkMap(net.coupling, net.params)


def _advance(fmap: NetworkMap, s: MultiState) -> MultiState:
    z = np.where(s.overflowed, 0, s.values)
    z, over = fmap(z, s.overflowed.copy())
    return MultiState(np.where(over, np.nan, z), over)


def step(net: Network, s: MultiState) -> MultiState:
    """
    s'_j = (sum_k w_jk s_k)^2 + c_j, flagging overflow from inputs or from the 1e150 guard.
    """
    if s.n != net.n:
        raise ValueError(f"state has dimension {s.n}, network has {net.n} nodes")
    return _advance(_map_for(net), s)


def _check_orbit_args(max_iter: int, escape_radius: float) -> None:
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    if not escape_radius > 0:
        raise ValueError(f"escape_radius must be > 0, got {escape_radius}")


def iterate_orbit(net: Network, s0: MultiState, max_iter: int, escape_radius: float) -> OrbitRecord:
    """
    Record states until the max-norm first exceeds ``escape_radius`` (overflow counts) or
    until ``max_iter`` steps have been taken.
    """
    _check_orbit_args(max_iter, escape_radius)
    if s0.n != net.n:
        raise ValueError(f"state has dimension {s0.n}, network has {net.n} nodes")
    fmap = _map_for(net)
    states = [s0]
    if s0.exceeds(escape_radius):
        return OrbitRecord(tuple(states), 0)
    s = s0
    for t in range(1, max_iter + 1):
        s = _advance(fmap, s)
        states.append(s)
        if s.exceeds(escape_radius):
            return OrbitRecord(tuple(states), t)
    return OrbitRecord(tuple(states), None)


def node_orbit_bounded(net: Network, s0: MultiState, node: int, max_iter: int, escape_radius: float) -> bool:
    """
    True iff |z_k(t)| <= escape_radius and z_k never overflows for t <= max_iter;
    other nodes are free to escape. ``node`` is 1-based.
    """
    k = check_node(node, net.n)
    _check_orbit_args(max_iter, escape_radius)
    if s0.n != net.n:
        raise ValueError(f"state has dimension {s0.n}, network has {net.n} nodes")
    r2 = escape_radius * escape_radius
    fmap = _map_for(net)
    s = s0
    for t in range(max_iter + 1):
        if t:
            s = _advance(fmap, s)
        v = s.values[k]
        if s.overflowed[k] or v.real * v.real + v.imag * v.imag > r2:
            log.debug("node %d left the disc at t=%d", node, t)
            return False
    return True
