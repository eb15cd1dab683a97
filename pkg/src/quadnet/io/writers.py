"""
Write outputs to disk
"""
from __future__ import annotations
import json
from pathlib import Path

import pandas as pd

from quadnet.utils.reproducibility import stable_hash_dict


def ensure_parent(path: str | Path) -> Path:
    """
    Ensure that the parent directory of the given path exists, creating it if necessary.
    """
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def write_json(path: str | Path, obj) -> None:
    """
    Write a Python object to a JSON file, ensuring that the parent directory exists.
    """
    p = ensure_parent(path)
    p.write_text(json.dumps(obj, ensure_ascii=False, indent=2), encoding="utf-8")



def write_csv(path: str | Path, df: pd.DataFrame) -> None:
    """CSV with full float precision (repr round-trip)."""
    p = ensure_parent(path)
    df.to_csv(p, index=False, float_format="%.17g", lineterminator="\n")


def sidecar_path(path: str | Path) -> Path:
    p = Path(path)
    return p.with_name(p.name + ".json")


def write_sidecar(path: str | Path, job: dict, extra: dict | None = None) -> Path:
    """
    Provenance file next to an output: the job configuration, its fingerprint and any
    output-specific metadata (grid, K, R_e, ...).
    """
    payload = {"job": job, "fingerprint": stable_hash_dict(job)}
    if extra:
        payload.update(extra)
    out = sidecar_path(path)
    write_json(out, payload)
    return out
