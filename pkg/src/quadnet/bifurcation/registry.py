"""
Registry for real map families.
"""
from __future__ import annotations
from typing import Dict, Type

from quadnet.bifurcation.base_map import RealMapFamily

_REGISTRY: Dict[str, Type[RealMapFamily]] = {}


def register(cls: Type[RealMapFamily]) -> Type[RealMapFamily]:
    """Register a map family class under its ``kind``."""
    _REGISTRY[cls.kind] = cls
    return cls


def get(kind: str, **kwargs) -> RealMapFamily:
    """Instantiate a registered map family (``z3-batch4`` and ``z3_batch4`` are the same)."""
    key = kind.strip().lower().replace("-", "_")
    if key not in _REGISTRY:
        raise KeyError(f"Map family not registered: {kind}")
    return _REGISTRY[key](**kwargs)


def available() -> list[str]:
    return sorted(_REGISTRY.keys())
