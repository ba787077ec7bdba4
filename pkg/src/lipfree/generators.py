"""Deterministic random pointed metric spaces."""
from __future__ import annotations

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .errors import BadParams
from .metric import PointedMetricSpace, validate_space

KINDS = ("line", "integer_line", "euclidean_cloud", "sphere_shell", "path_graph", "random_metric")


def instance_rng(seed: int, *keys: int) -> np.random.Generator:
    """Counter-based stream: the same (seed, keys) always yields the same draws."""
    return np.random.default_rng([int(seed) & (2**64 - 1), *map(int, keys)])


def _pairwise(P: np.ndarray) -> np.ndarray:
    return np.linalg.norm(P[:, None, :] - P[None, :, :], axis=-1)


def line_points(size: int, rng: np.random.Generator) -> np.ndarray:
    """0 followed by size - 1 distinct sorted draws from (0, 10)."""
    while True:
        t = np.sort(rng.uniform(0.0, 10.0, size=size - 1))
        if size == 1 or (t[0] > 0 and np.all(np.diff(t) > 1e-6)):
            return np.concatenate(([0.0], t))


def generate_space(kind: str, size: int, seed: int | np.random.Generator) -> PointedMetricSpace:
    """A ``size``-point space (``integer_line`` gives {0, ..., size})."""
    if kind not in KINDS:
        raise BadParams(f"unknown space kind {kind!r}; choose from {', '.join(KINDS)}")
    if int(size) != size or size < 1:
        raise BadParams(f"size must be a positive integer, got {size!r}")
    rng = seed if isinstance(seed, np.random.Generator) else instance_rng(seed)

    if kind == "integer_line":
        t = np.arange(size + 1, dtype=float)
        return validate_space(np.abs(t[:, None] - t[None, :]))
    if kind == "line":
        t = line_points(size, rng)
        return validate_space(np.abs(t[:, None] - t[None, :]))
    if kind == "euclidean_cloud":
        P = rng.uniform(-5.0, 5.0, size=(size, 2))
        P[0] = 0.0
        return validate_space(_pairwise(P))
    if kind == "sphere_shell":
        # base at the origin, others at radii in [1, 4]
        dim = 3
        v = rng.normal(size=(size, dim))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        P = v * rng.uniform(1.0, 4.0, size=(size, 1))
        P[0] = 0.0
        return validate_space(_pairwise(P))
    if kind == "path_graph":
        w = rng.uniform(0.1, 3.0, size=size - 1)
        pos = np.concatenate(([0.0], np.cumsum(w)))
        return validate_space(np.abs(pos[:, None] - pos[None, :]))
    # random_metric: shortest-path completion of a connected random graph
    W = np.zeros((size, size))
    order = rng.permutation(size)
    for a, b in zip(order, order[1:]):
        W[a, b] = W[b, a] = rng.uniform(0.1, 5.0)
    extra = np.triu(rng.random((size, size)) < 0.3, 1)
    vals = rng.uniform(0.1, 5.0, size=(size, size))
    W = np.where(extra & (W == 0), vals, W)
    W = np.maximum(W, W.T)
    return validate_space(shortest_path(W, method="D", directed=False))
