"""
Base class for one-parameter real map families.
"""
from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np


class RealMapFamily(ABC):
    """
    A real map xi -> f(xi; p). Subclasses implement the map and its xi-derivative (chain rule);
    both accept floats or numpy arrays that broadcast against each other.
    """
    kind: str
    param_name: str = "p"

    @abstractmethod
    def evaluate(self, xi, p):
        raise NotImplementedError

    @abstractmethod
    def derivative(self, xi, p):
        raise NotImplementedError

    def __call__(self, xi, p):
        return self.evaluate(xi, p)

    def iterate(self, x0: float, p: float, count: int) -> np.ndarray:
        """Orbit x0, f(x0), ..., f^count(x0) at a fixed parameter (inf-safe)."""
        out = np.empty(count + 1)
        x = float(x0)
        out[0] = x
        with np.errstate(over="ignore", invalid="ignore"):
            for t in range(1, count + 1):
                x = float(self.evaluate(x, p)) if np.isfinite(x) else x
                out[t] = x
        return out

    def describe(self) -> dict:
        return {"kind": self.kind, "param": self.param_name}
