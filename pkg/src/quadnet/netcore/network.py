"""
Network of coupled quadratic nodes and its multi-states.

Node j is updated as z_j <- (sum_k g_jk A_jk z_k)^2 + c_j; row j of the matrices holds
the inputs of node j (receiving node), column k the sending node.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Network:
    """
    Wiring (adjacency), real weights and per-node complex parameters.

    :var Example:
        >>> net = Network.from_lists([[1]], [[1.0]], [0.5])
        >>> net.n
        1
    """
    adjacency: np.ndarray
    weights: np.ndarray
    params: np.ndarray

    def __post_init__(self):
        adjacency = np.array(self.adjacency)
        weights = np.array(self.weights)
        params = np.array(self.params, dtype=complex).reshape(-1)

        if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1] or adjacency.shape[0] == 0:
            raise ValueError(f"adjacency must be a non-empty square matrix, got shape {adjacency.shape}")
        n = adjacency.shape[0]
        if weights.shape != (n, n):
            raise ValueError(f"weights shape {weights.shape} does not match adjacency shape {(n, n)}")
        if params.shape == (1,) and n > 1:
            params = np.full(n, params[0], dtype=complex)
        if params.shape != (n,):
            raise ValueError(f"params has {params.shape[0]} entries, network has {n} nodes")
        if not np.isin(adjacency, (0, 1)).all():
            raise ValueError("adjacency entries must be 0 or 1")
        if np.iscomplexobj(weights):
            if np.any(weights.imag != 0):
                raise ValueError("complex weights are not supported; weights must be real")
            weights = weights.real
        weights = weights.astype(float)
        if not np.all(np.isfinite(weights)) or not np.all(np.isfinite(params)):
            raise ValueError("weights and params must be finite")

        object.__setattr__(self, "adjacency", _frozen(adjacency.astype(np.int8)))
        object.__setattr__(self, "weights", _frozen(weights))
        object.__setattr__(self, "params", _frozen(params))

    @classmethod
    def from_lists(cls, adjacency: Sequence[Sequence[int]], weights: Sequence[Sequence[float]],
                   params: complex | Sequence[complex]) -> "Network":
        """Build from nested lists; a scalar ``params`` is an equi-parameter."""
        n = len(adjacency)
        p = np.full(n, params, dtype=complex) if np.isscalar(params) else np.asarray(params, dtype=complex)
        return cls(np.asarray(adjacency), np.asarray(weights), p)

    @property
    def n(self) -> int:
        return int(self.adjacency.shape[0])

    @property
    def coupling(self) -> np.ndarray:
        """Effective weights w_jk = g_jk * A_jk."""
        return self.weights * self.adjacency

    def with_params(self, c: complex | Sequence[complex]) -> "Network":
        """Same wiring with a new equi-parameter (scalar) or per-node parameter vector."""
        if np.isscalar(c):
            return Network(self.adjacency, self.weights, np.full(self.n, c, dtype=complex))
        return Network(self.adjacency, self.weights, np.asarray(c, dtype=complex))

    def upstream(self, node: int) -> list[int]:
        """
        0-based indices of every node whose orbit can influence ``node`` (1-based), itself included.
        The restricted state evolves autonomously.
        """
        k = check_node(node, self.n)
        w = self.coupling
        seen = {k}
        frontier = [k]
        while frontier:
            j = frontier.pop()
            for src in np.flatnonzero(w[j]):
                if int(src) not in seen:
                    seen.add(int(src))
                    frontier.append(int(src))
        return sorted(seen)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return (
            np.array_equal(self.adjacency, other.adjacency)
            and np.array_equal(self.weights, other.weights)
            and np.array_equal(self.params, other.params)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Network(n={self.n}, edges={int(self.adjacency.sum())})"


@dataclass(frozen=True, eq=False)
class MultiState:
    """
    Point of C^n. Overflowed entries hold nan and carry their flag; their value is
    only used to propagate the overflow.
    """
    values: np.ndarray
    overflowed: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex).reshape(-1)
        overflowed = np.array(self.overflowed, dtype=bool).reshape(-1)
        if values.shape != overflowed.shape:
            raise ValueError(f"values {values.shape} and overflow flags {overflowed.shape} differ in length")
        object.__setattr__(self, "values", _frozen(values))
        object.__setattr__(self, "overflowed", _frozen(overflowed))

    @classmethod
    def of(cls, values: Sequence[complex]) -> "MultiState":
        v = np.asarray(values, dtype=complex).reshape(-1)
        return cls(v, np.zeros(v.shape, dtype=bool))

    @classmethod
    def zeros(cls, n: int) -> "MultiState":
        """Critical point (0, ..., 0)."""
        return cls.of(np.zeros(n, dtype=complex))

    @classmethod
    def uniform(cls, z0: complex, n: int) -> "MultiState":
        """Diagonal lift (z0, ..., z0)."""
        return cls.of(np.full(n, z0, dtype=complex))

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def any_overflowed(self) -> bool:
        return bool(self.overflowed.any())

    def max_norm(self) -> float:
        """max_j |z_j|; infinite once any node has overflowed."""
        if self.any_overflowed:
            return float("inf")
        return float(np.abs(self.values).max())

    def exceeds(self, radius: float) -> bool:
        """True if some node overflowed or has |z_j| > radius (squared-modulus test)."""
        if self.any_overflowed:
            return True
        v = self.values
        return bool(np.any(v.real * v.real + v.imag * v.imag > radius * radius))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiState):
            return NotImplemented
        return (
            np.array_equal(self.overflowed, other.overflowed)
            and np.array_equal(self.values, other.values, equal_nan=True)
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class OrbitRecord:
    """States for t = 0..T; ``escape_iter`` is the first t whose max-norm exceeded the radius."""
    states: tuple[MultiState, ...]
    escape_iter: int | None

    @property
    def escaped(self) -> bool:
        return self.escape_iter is not None

    def node_values(self, node: int) -> np.ndarray:
        """Sequence z_k(t) for a 1-based node (nan after overflow)."""
        k = check_node(node, self.states[0].n)
        return np.array([s.values[k] for s in self.states])


def check_node(node: int, n: int) -> int:
    """Validate a 1-based node number and return its 0-based index."""
    if not isinstance(node, (int, np.integer)) or not 1 <= int(node) <= n:
        raise IndexError(f"node index {node} out of range 1..{n}")
    return int(node) - 1
