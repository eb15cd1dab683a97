"""
Built-in network families.

- single:      z -> z^2 + c
- simple_dual: z1 -> z1^2 + c, z2 -> (a z1 + z2)^2 + c, z3 -> (z1 + z2)^2 + c
- self_drive:  z1 -> z1^2 + c, z2 -> (a z1 + z2)^2 + c, z3 -> (z1 + z2 + b z3)^2 + c
- bipartite:   two N-node cliques X, Y with full within-clique blocks (self-loops included) at weight
               g_within, and M_xy / M_yx between-clique edges at weight g_between
- explicit:    a caller-supplied Network
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Sequence

import numpy as np

from quadnet.netcore import Network

log = logging.getLogger("quadnet.families")


@dataclass(frozen=True)
class FamilySpec:
    """
    Parameters of a built-in family. Unused fields are ignored by the other kinds.

    Bipartite cell positions index the N x N between-clique block in row-major order; the ``xy``
    block holds edges into X from Y (rows of X, columns of Y), the ``yx`` block edges into Y from X.
    When positions are omitted the first M cells are used.
    """
    kind: str
    a: float = 0.0
    b: float = 0.0
    c: complex = 0j
    n_clique: int = 2
    m_xy: int = 0
    m_yx: int = 0
    g_within: float = 0.5
    g_between: float = -0.5
    xy_cells: tuple[int, ...] | None = None
    yx_cells: tuple[int, ...] | None = None
    network: Network | None = None

    @property
    def normalized_kind(self) -> str:
        return normalize_kind(self.kind)

    def as_dict(self) -> dict:
        d = {"kind": self.normalized_kind}
        k = self.normalized_kind
        if k in ("simple_dual", "self_drive"):
            d["a"] = self.a
        if k == "self_drive":
            d["b"] = self.b
        if k == "bipartite":
            d.update(n_clique=self.n_clique, m_xy=self.m_xy, m_yx=self.m_yx,
                     g_within=self.g_within, g_between=self.g_between,
                     xy_cells=list(self.xy_cells) if self.xy_cells is not None else None,
                     yx_cells=list(self.yx_cells) if self.yx_cells is not None else None)
        if k == "explicit" and self.network is not None:
            d["adjacency"] = self.network.adjacency.tolist()
            d["weights"] = self.network.weights.tolist()
        return d


def normalize_kind(kind: str) -> str:
    return kind.strip().lower().replace("-", "_")


def single(c: complex = 0j) -> Network:
    return Network.from_lists([[1]], [[1.0]], c)


def simple_dual(a: float, c: complex = 0j) -> Network:
    adjacency = [[1, 0, 0], [1, 1, 0], [1, 1, 0]]
    weights = [[1.0, 0.0, 0.0], [a, 1.0, 0.0], [1.0, 1.0, 0.0]]
    return Network.from_lists(adjacency, weights, c)


def self_drive(a: float, b: float, c: complex = 0j) -> Network:
    adjacency = [[1, 0, 0], [1, 1, 0], [1, 1, 1]]
    weights = [[1.0, 0.0, 0.0], [a, 1.0, 0.0], [1.0, 1.0, b]]
    return Network.from_lists(adjacency, weights, c)


def _check_cells(cells: Sequence[int] | None, count: int, n: int, name: str) -> list[int]:
    size = n * n
    if count < 0 or count > size:
        raise ValueError(f"{name}: edge count {count} outside 0..{size} for N={n}")
    if cells is None:
        return list(range(count))
    cells = [int(x) for x in cells]
    if len(cells) != count:
        raise ValueError(f"{name}: {len(cells)} cell positions given for {count} edges")
    if len(set(cells)) != len(cells):
        raise ValueError(f"{name}: duplicate cell positions {cells}")
    bad = [x for x in cells if not 0 <= x < size]
    if bad:
        raise ValueError(f"{name}: cell positions {bad} outside 0..{size - 1}")
    return cells


def bipartite_matrices(n: int, xy_cells: Sequence[int], yx_cells: Sequence[int],
                       g_within: float = 0.5, g_between: float = -0.5) -> tuple[np.ndarray, np.ndarray]:
    """Adjacency and weight matrices (2N x 2N) of a bipartite configuration."""
    if n < 1:
        raise ValueError(f"clique size must be >= 1, got {n}")
    adjacency = np.zeros((2 * n, 2 * n), dtype=np.int8)
    weights = np.zeros((2 * n, 2 * n), dtype=float)
    for block in (slice(0, n), slice(n, 2 * n)):
        adjacency[block, block] = 1
        weights[block, block] = g_within
    for cell in xy_cells:
        r, col = divmod(int(cell), n)
        adjacency[r, n + col] = 1
        weights[r, n + col] = g_between
    for cell in yx_cells:
        r, col = divmod(int(cell), n)
        adjacency[n + r, col] = 1
        weights[n + r, col] = g_between
    return adjacency, weights


def bipartite(n: int, m_xy: int, m_yx: int, g_within: float = 0.5, g_between: float = -0.5,
              xy_cells: Sequence[int] | None = None, yx_cells: Sequence[int] | None = None,
              c: complex = 0j) -> Network:
    xy = _check_cells(xy_cells, m_xy, n, "xy")
    yx = _check_cells(yx_cells, m_yx, n, "yx")
    adjacency, weights = bipartite_matrices(n, xy, yx, g_within, g_between)
    return Network(adjacency, weights, np.full(2 * n, c, dtype=complex))


_BUILDERS: Dict[str, Callable[[FamilySpec], Network]] = {
    "single": lambda s: single(s.c),
    "simple_dual": lambda s: simple_dual(s.a, s.c),
    "self_drive": lambda s: self_drive(s.a, s.b, s.c),
    "bipartite": lambda s: bipartite(s.n_clique, s.m_xy, s.m_yx, s.g_within, s.g_between,
                                     s.xy_cells, s.yx_cells, s.c),
}


def available() -> list[str]:
    return sorted(list(_BUILDERS) + ["explicit"])


def build(spec: FamilySpec) -> Network:
    """Network described by ``spec``."""
    kind = spec.normalized_kind
    if kind == "explicit":
        if spec.network is None:
            raise ValueError("explicit family needs a network")
        return spec.network
    if kind not in _BUILDERS:
        raise KeyError(f"Network family not registered: {spec.kind} (available: {', '.join(available())})")
    return _BUILDERS[kind](spec)


# (a, b) -> network for the two-parameter loci; b is unused by simple_dual
_TWO_PARAMETER: Dict[str, Callable[[FamilySpec, float, float], FamilySpec]] = {
    "self_drive": lambda s, a, b: FamilySpec("self_drive", a=a, b=b, c=s.c),
    "simple_dual": lambda s, a, b: FamilySpec("simple_dual", a=a, c=s.c),
    # a = g_within, b = g_between at fixed placement
    "bipartite": lambda s, a, b: FamilySpec(
        "bipartite", c=s.c, n_clique=s.n_clique, m_xy=s.m_xy, m_yx=s.m_yx,
        g_within=a, g_between=b, xy_cells=s.xy_cells, yx_cells=s.yx_cells),
}


def two_parameter_network(base: FamilySpec, a: float, b: float) -> Network:
    kind = base.normalized_kind
    if kind not in _TWO_PARAMETER:
        raise KeyError(f"No (a, b) parametrisation for family {base.kind}")
    return build(_TWO_PARAMETER[kind](base, float(a), float(b)))


def coupling_field(base: FamilySpec, a_plane: np.ndarray, b_plane: np.ndarray) -> np.ndarray:
    """Effective weights for every (a, b) pixel, shape (n, n, *plane.shape)."""
    a_plane = np.asarray(a_plane, dtype=float)
    b_plane = np.asarray(b_plane, dtype=float)
    if a_plane.shape != b_plane.shape:
        raise ValueError(f"a and b planes differ in shape: {a_plane.shape} vs {b_plane.shape}")
    probe = two_parameter_network(base, 0.0, 0.0)
    field = np.empty((probe.n, probe.n) + a_plane.shape, dtype=float)
    for idx in np.ndindex(a_plane.shape):
        field[(slice(None), slice(None)) + idx] = two_parameter_network(base, a_plane[idx], b_plane[idx]).coupling
    return field
