"""
Vectorised network map over arrays of states.

A state array has shape ``(n, *pixels)``: one complex plane per node. Coupling may be a plain
``(n, n)`` matrix or carry its own pixel axes ``(n, n, *pixels)`` (one network per pixel, as in
the (a, b) loci). Params broadcast the same way: ``(n,)`` or ``(n, *pixels)``.

Overflowed entries are stored as 0 and tracked in a parallel boolean array.
"""
from __future__ import annotations

import numpy as np

OVERFLOW_GUARD = 1e150


def _canonical_order(parts: np.ndarray) -> np.ndarray:
    # by magnitude, ties by value: a negated multiset is summed in the same order
    parts = np.sort(parts, axis=0)
    return np.take_along_axis(parts, np.argsort(np.abs(parts), axis=0, kind="stable"), axis=0)


def _sum_inputs(terms: list[np.ndarray]) -> np.ndarray:
    """
    Sum incoming terms in a canonical order (separately for real and imaginary parts) so the
    result only depends on the multiset of terms and flips sign exactly with it. Two terms
    commute exactly and need no sorting.
    """
    if len(terms) == 1:
        return terms[0]
    if len(terms) == 2:
        return terms[0] + terms[1]
    stacked = np.stack(terms)
    re = _canonical_order(stacked.real)
    im = _canonical_order(stacked.imag)
    acc_re = re[0]
    acc_im = im[0]
    for i in range(1, len(terms)):
        acc_re = acc_re + re[i]
        acc_im = acc_im + im[i]
    out = np.empty(acc_re.shape, dtype=complex)
    out.real = acc_re
    out.imag = acc_im
    return out


class NetworkMap:
    """
    One synchronous step of the network applied to a whole array of states.

    :param coupling: effective weights w_jk, shape ``(n, n)`` or ``(n, n, *pixels)``
    :param params: node parameters c_j, shape ``(n,)`` or ``(n, *pixels)``
    """

    def __init__(self, coupling: np.ndarray, params: np.ndarray):
        self.coupling = np.asarray(coupling, dtype=float)
        self.params = np.asarray(params, dtype=complex)
        if self.coupling.ndim < 2 or self.coupling.shape[0] != self.coupling.shape[1]:
            raise ValueError(f"coupling must be (n, n, ...), got {self.coupling.shape}")
        self.n = self.coupling.shape[0]
        if self.params.shape[0] != self.n:
            raise ValueError(f"params has {self.params.shape[0]} rows, coupling has {self.n} nodes")
        # nonzero inputs per receiving node, in column order
        self.inputs = [
            [k for k in range(self.n) if np.any(self.coupling[j, k] != 0)]
            for j in range(self.n)
        ]

    def __call__(self, z: np.ndarray, over: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if z.shape[0] != self.n:
            raise ValueError(f"state has {z.shape[0]} nodes, network has {self.n}")
        pixel_shape = z.shape[1:]
        new_z = np.empty_like(z)
        new_over = np.empty_like(over)
        with np.errstate(over="ignore", invalid="ignore"):
            for j in range(self.n):
                ks = self.inputs[j]
                if not ks:
                    acc = np.zeros(pixel_shape, dtype=complex)
                    hit = np.zeros(pixel_shape, dtype=bool)
                else:
                    terms = []
                    hit = np.zeros(pixel_shape, dtype=bool)
                    for k in ks:
                        w = self.coupling[j, k]
                        terms.append(w * z[k])
                        hit = hit | (over[k] & (w != 0))
                    acc = _sum_inputs(terms)
                sq = acc.real * acc.real + acc.imag * acc.imag
                bad = hit | ~(sq <= OVERFLOW_GUARD)
                new_z[j] = np.where(bad, 0, acc * acc + self.params[j])
                new_over[j] = bad
        return new_z, new_over
