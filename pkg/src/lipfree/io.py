"""JSON file formats for spaces, free vectors, weights and functions."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .free import FreeVector
from .metric import LipschitzFunction, PointedMetricSpace, validate_space


def space_to_json(M: PointedMetricSpace) -> dict:
    out: dict = {"dist": M.dist.tolist()}
    if M.labels is not None:
        out["labels"] = list(M.labels)
    return out


def space_from_json(data: dict) -> PointedMetricSpace:
    if "dist" not in data:
        raise ValueError("space file needs a 'dist' matrix")
    return validate_space(data["dist"], data.get("labels"))


def load_space(path) -> PointedMetricSpace:
    return space_from_json(json.loads(Path(path).read_text()))


def dump_space(M: PointedMetricSpace, path) -> None:
    Path(path).write_text(json.dumps(space_to_json(M), indent=2) + "\n")


def vector_to_json(gamma: FreeVector) -> dict:
    return {"coeff": {str(i): float(c) for i, c in enumerate(gamma.coeff) if i > 0 and c != 0}}


def vector_from_json(space: PointedMetricSpace, data: dict) -> FreeVector:
    coeff = data.get("coeff", {})
    for k in coeff:
        if not 0 <= int(k) < space.n:
            raise ValueError(f"coefficient index {k} out of range for {space.n} points")
    return FreeVector.from_dict(space, coeff)


def load_vector(space: PointedMetricSpace, path) -> FreeVector:
    return vector_from_json(space, json.loads(Path(path).read_text()))


def function_to_json(f: LipschitzFunction) -> dict:
    return {"values": f.values.tolist()}


def function_from_json(space: PointedMetricSpace, data: dict) -> LipschitzFunction:
    v = np.array(data["values"], dtype=float)
    if v.shape != (space.n,):
        raise ValueError(f"expected {space.n} values, got {v.size}")
    if v[0] != 0.0:
        raise ValueError("the value at the base point must be 0")
    return LipschitzFunction(space, v)


def load_function(space: PointedMetricSpace, path) -> LipschitzFunction:
    return function_from_json(space, json.loads(Path(path).read_text()))
