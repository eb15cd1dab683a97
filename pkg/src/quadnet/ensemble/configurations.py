"""
Families of network configurations sharing a property: a fixed number of edges on N nodes, or
fixed between-clique edge counts of a two-clique (bipartite) network.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from quadnet.errors import CapExceededError
from quadnet.families import bipartite_matrices
from quadnet.netcore import Network
from quadnet.utils.reproducibility import make_rng

log = logging.getLogger("quadnet.ensemble")

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class ConfigurationFamily:
    """
    ``kind`` is "edge_count" (N nodes, k edges, self-loops count as edges, weight g, default 1/N)
    or "bipartite" (two N-cliques, m_xy / m_yx between-clique edges, weights g_within / g_between).
    ``mode`` is "exhaustive" or "sampled" (``samples`` distinct draws from ``seed``).
    """
    kind: str
    n: int
    k: int = 0
    m_xy: int = 0
    m_yx: int = 0
    g: float | None = None
    g_within: float = 0.5
    g_between: float = -0.5
    mode: str = "exhaustive"
    samples: int = 20
    seed: int = 0
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        kind = self.kind.strip().lower().replace("-", "_")
        object.__setattr__(self, "kind", kind)
        if kind not in ("edge_count", "bipartite"):
            raise ValueError(f"unknown configuration property {self.kind!r}")
        if self.mode not in ("exhaustive", "sampled"):
            raise ValueError(f"mode must be exhaustive or sampled, got {self.mode!r}")
        if self.n < 1:
            raise ValueError(f"N must be >= 1, got {self.n}")
        cells = self.n * self.n
        for name, value in (("k", self.k), ("m_xy", self.m_xy), ("m_yx", self.m_yx)):
            if not 0 <= value <= cells:
                raise ValueError(f"{name}={value} outside 0..{cells} for N={self.n}")
        if self.mode == "sampled" and self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")

    @property
    def weight(self) -> float:
        return 1.0 / self.n if self.g is None else float(self.g)

    def size(self) -> int:
        """Number of configurations with the property (exact)."""
        cells = self.n * self.n
        if self.kind == "edge_count":
            return math.comb(cells, self.k)
        return math.comb(cells, self.m_xy) * math.comb(cells, self.m_yx)

    def as_dict(self) -> dict:
        d = {"kind": self.kind, "n": self.n, "mode": self.mode}
        if self.kind == "edge_count":
            d.update(k=self.k, g=self.weight)
        else:
            d.update(m_xy=self.m_xy, m_yx=self.m_yx, g_within=self.g_within, g_between=self.g_between)
        if self.mode == "sampled":
            d.update(samples=self.samples, seed=self.seed)
        return d


def _edge_count_network(fam: ConfigurationFamily, cells: Sequence[int]) -> Network:
    n = fam.n
    adjacency = np.zeros(n * n, dtype=np.int8)
    adjacency[list(cells)] = 1
    adjacency = adjacency.reshape(n, n)
    weights = np.full((n, n), fam.weight)
    return Network(adjacency, weights, np.zeros(n, dtype=complex))


def _bipartite_network(fam: ConfigurationFamily, xy: Sequence[int], yx: Sequence[int]) -> Network:
    adjacency, weights = bipartite_matrices(fam.n, xy, yx, fam.g_within, fam.g_between)
    return Network(adjacency, weights, np.zeros(2 * fam.n, dtype=complex))


def _partial_shuffle(rng, size: int, k: int) -> tuple[int, ...]:
    """First k entries of a Fisher-Yates shuffle of range(size), sorted."""
    cells = list(range(size))
    for i in range(k):
        j = rng.randrange(i, size)
        cells[i], cells[j] = cells[j], cells[i]
    return tuple(sorted(cells[:k]))


def _exhaustive(fam: ConfigurationFamily) -> Iterator[Network]:
    cells = fam.n * fam.n
    if fam.kind == "edge_count":
        for combo in itertools.combinations(range(cells), fam.k):
            yield _edge_count_network(fam, combo)
    else:
        for xy in itertools.combinations(range(cells), fam.m_xy):
            for yx in itertools.combinations(range(cells), fam.m_yx):
                yield _bipartite_network(fam, xy, yx)


def _sampled(fam: ConfigurationFamily) -> list[Network]:
    rng = make_rng(fam.seed)
    cells = fam.n * fam.n
    target = min(fam.samples, fam.size())
    seen: set[tuple] = set()
    out: list[Network] = []
    attempts = 0
    while len(out) < target and attempts < 100 * target:
        attempts += 1
        if fam.kind == "edge_count":
            key: tuple = _partial_shuffle(rng, cells, fam.k)
        else:
            key = (_partial_shuffle(rng, cells, fam.m_xy), _partial_shuffle(rng, cells, fam.m_yx))
        if key in seen:
            continue
        seen.add(key)
        out.append(_edge_count_network(fam, key) if fam.kind == "edge_count" else _bipartite_network(fam, *key))
    if len(out) < fam.samples:
        log.warning("sampled %d distinct configurations, %d requested", len(out), fam.samples)
    return out


def enumerate_configurations(fam: ConfigurationFamily) -> list[Network]:
    """
    Exhaustive mode: lexicographic k-subsets of the row-major cells (bipartite: xy outer, yx inner).
    Sampled mode: ``samples`` distinct configurations from seeded partial shuffles.

    :raises CapExceededError: exhaustive family larger than ``fam.cap``
    """
    if fam.mode == "exhaustive":
        size = fam.size()
        if size > fam.cap:
            raise CapExceededError(f"family has {size} configurations, cap is {fam.cap}; use sampled mode")
        nets = list(_exhaustive(fam))
    else:
        nets = _sampled(fam)
    log.info("%s family N=%d: %d configurations (%s)", fam.kind, fam.n, len(nets), fam.mode)
    return nets


def bitmask_hex(net: Network) -> str:
    """Row-major adjacency bits as hex, first cell most significant."""
    bits = "".join(str(int(v)) for v in net.adjacency.reshape(-1))
    width = (len(bits) + 3) // 4
    return format(int(bits, 2), f"0{width}x")
