"""
Reduced maps of the self-drive network at c = -1.

z3_batch4 (a = -1): four network steps of node 3 expressed in xi = z3,
    f1 = b^2 xi^2 - 1, f2 = (b u - 2)^2 - 1, f3 = (b u - 1)^2 - 1, composed f3 o f3 o f2 o f1.
z2_even (parameter a): two network steps of node 2 while z1 alternates 0, -1,
    f = (xi^2 - 1 - a)^2 - 1.
z3_limit (parameter b, forcing xi0): g = (xi0 + b xi)^2 - 1.
"""
from __future__ import annotations

from quadnet.bifurcation.base_map import RealMapFamily
from quadnet.bifurcation.registry import register


@register
class Z3Batch4(RealMapFamily):
    kind = "z3_batch4"
    param_name = "b"

    def evaluate(self, xi, b):
        u = b * b * xi * xi - 1
        u = (b * u - 2) ** 2 - 1
        u = (b * u - 1) ** 2 - 1
        return (b * u - 1) ** 2 - 1

    def derivative(self, xi, b):
        u1 = b * b * xi * xi - 1
        d = 2 * b * b * xi
        d = d * 2 * b * (b * u1 - 2)
        u2 = (b * u1 - 2) ** 2 - 1
        d = d * 2 * b * (b * u2 - 1)
        u3 = (b * u2 - 1) ** 2 - 1
        return d * 2 * b * (b * u3 - 1)


@register
class Z2Even(RealMapFamily):
    kind = "z2_even"
    param_name = "a"

    def evaluate(self, xi, a):
        u = xi * xi - 1 - a
        return u * u - 1

    def derivative(self, xi, a):
        return 4 * xi * (xi * xi - 1 - a)


@register
class Z3Limit(RealMapFamily):
    kind = "z3_limit"
    param_name = "b"

    def __init__(self, xi0: float = 0.0):
        self.xi0 = float(xi0)

    def evaluate(self, xi, b):
        u = self.xi0 + b * xi
        return u * u - 1

    def derivative(self, xi, b):
        return 2 * b * (self.xi0 + b * xi)

    def describe(self) -> dict:
        return {**super().describe(), "xi0": self.xi0}
