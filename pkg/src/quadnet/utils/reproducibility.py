"""
Utility functions for reproducibility
"""
from __future__ import annotations
import hashlib
import json
import random

import numpy as np


def stable_hash_dict(d: dict) -> str:
    """
    Generate a stable hash of a dictionary.

    :param d: The dictionary to hash (must be JSON-serialisable)
    :type d: dict
    :return: The SHA256 hash of the sorted-key JSON dump
    :rtype: str
    """
    blob = json.dumps(d, sort_keys=True, ensure_ascii=False).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def array_fingerprint(arr: np.ndarray) -> str:
    """
    SHA1 of an array's dtype, shape and raw bytes. Equal arrays give equal fingerprints;
    callers still verify equality on collision.
    """
    a = np.ascontiguousarray(arr)
    h = hashlib.sha1()
    h.update(str(a.dtype).encode("ascii"))
    h.update(repr(a.shape).encode("ascii"))
    h.update(a.tobytes())
    return h.hexdigest()


def make_rng(seed: int | None) -> random.Random:
    """Seeded generator for combinatorial sampling (same seed, same draws)."""
    return random.Random(seed)
