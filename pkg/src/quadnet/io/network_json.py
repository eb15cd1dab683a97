"""
Network JSON documents:

    {"n": 3,
     "adjacency": [[1,0,0],[1,1,0],[1,1,1]],
     "weights":   [[1,0,0],[-1,1,0],[1,1,-1]],
     "c": [[-1,0],[-1,0],[-1,0]]}          # or a single [re, im] equi-parameter

Schema problems are reported as ConfigError with a JSON-pointer path ("adjacency/2").
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from quadnet.errors import ConfigError
from quadnet.io.writers import write_json
from quadnet.netcore import Network


class NetworkDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(gt=0)
    adjacency: list[list[int]]
    weights: list[list[float]]
    c: list[Union[float, list[float]]]


def json_pointer(loc) -> str:
    return "/".join(str(part) for part in loc)


def _check_matrix(rows: list[list], n: int, name: str) -> None:
    if len(rows) != n:
        raise ConfigError(name, f"expected {n} rows, got {len(rows)}")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ConfigError(f"{name}/{i}", f"expected {n} entries, got {len(row)}")


def _params(c: list, n: int) -> np.ndarray:
    if len(c) == 2 and all(isinstance(v, float) for v in c):
        return np.full(n, complex(c[0], c[1]), dtype=complex)
    if len(c) != n:
        raise ConfigError("c", f"expected one [re, im] pair or {n} pairs, got {len(c)} entries")
    out = np.empty(n, dtype=complex)
    for j, pair in enumerate(c):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ConfigError(f"c/{j}", "expected a [re, im] pair")
        out[j] = complex(pair[0], pair[1])
    return out


def network_from_document(raw: dict) -> Network:
    try:
        doc = NetworkDocument.model_validate(raw)
    except ValidationError as e:
        err = e.errors()[0]
        raise ConfigError(json_pointer(err["loc"]) or "/", err["msg"]) from e
    _check_matrix(doc.adjacency, doc.n, "adjacency")
    _check_matrix(doc.weights, doc.n, "weights")
    for i, row in enumerate(doc.adjacency):
        for j, v in enumerate(row):
            if v not in (0, 1):
                raise ConfigError(f"adjacency/{i}/{j}", f"entries must be 0 or 1, got {v}")
    params = _params(doc.c, doc.n)
    try:
        return Network(np.array(doc.adjacency), np.array(doc.weights, dtype=float), params)
    except ValueError as e:
        raise ConfigError("/", str(e)) from e


def read_network_json(path: str | Path) -> Network:
    p = Path(path)
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ConfigError(str(path), "network file not found") from e
    except json.JSONDecodeError as e:
        raise ConfigError(str(path), f"invalid JSON: {e}") from e
    return network_from_document(raw)


def network_to_document(net: Network) -> dict:
    return {
        "n": net.n,
        "adjacency": net.adjacency.astype(int).tolist(),
        "weights": net.weights.tolist(),
        "c": [[float(z.real), float(z.imag)] for z in net.params],
    }


def write_network_json(net: Network, path: str | Path) -> None:
    write_json(path, network_to_document(net))
