"""Finite pointed metric spaces and real Lipschitz functions on them.

The base point is always index 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptySelection,
    InvalidSpace,
    NotSeparated,
    NotSymmetric,
    TriangleViolation,
)

TRIANGLE_RTOL = 1e-12
SYMMETRY_RTOL = 1e-12


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PointedMetricSpace:
    """A validated finite metric space; build it with :func:`validate_space`."""

    dist: np.ndarray
    labels: tuple[str, ...] | None = None

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def __len__(self) -> int:
        return self.n

    def d(self, i: int, j: int) -> float:
        return float(self.dist[i, j])

    @property
    def base_distances(self) -> np.ndarray:
        """d(0, x) for every point x."""
        return self.dist[0]

    def same_as(self, other: "PointedMetricSpace") -> bool:
        return (
            self.n == other.n
            and np.array_equal(self.dist, other.dist)
            and self.labels == other.labels
        )


@dataclass(frozen=True, eq=False)
class LipschitzFunction:
    """Real values on the points of ``space``; vanishes at the base point."""

    space: PointedMetricSpace
    values: np.ndarray = field()

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.space.n,):
            raise ValueError(f"expected {self.space.n} values, got shape {v.shape}")
        if v[0] != 0.0:
            raise ValueError("a Lipschitz function in Lip_0 must vanish at the base point")
        object.__setattr__(self, "values", _frozen(v))

    def __call__(self, i: int) -> float:
        return float(self.values[i])

    def __add__(self, other: "LipschitzFunction") -> "LipschitzFunction":
        return LipschitzFunction(self.space, self.values + other.values)

    def __sub__(self, other: "LipschitzFunction") -> "LipschitzFunction":
        return LipschitzFunction(self.space, self.values - other.values)

    def __neg__(self) -> "LipschitzFunction":
        return LipschitzFunction(self.space, -self.values)

    def __mul__(self, c: float) -> "LipschitzFunction":
        return LipschitzFunction(self.space, c * self.values)

    __rmul__ = __mul__

    @classmethod
    def zero(cls, space: PointedMetricSpace) -> "LipschitzFunction":
        return cls(space, np.zeros(space.n))

    @classmethod
    def distance_to(cls, space: PointedMetricSpace, y: int) -> "LipschitzFunction":
        """z -> d(z, y) - d(0, y)."""
        return cls(space, space.dist[:, y] - space.dist[0, y])


def validate_space(raw, labels: Sequence[str] | None = None) -> PointedMetricSpace:
    """Check that ``raw`` is a metric on points 0..n-1 and wrap it.

    Raises NotSymmetric, NotSeparated or TriangleViolation (carrying the worst
    offending triple) and InvalidSpace for malformed input.
    """
    d = np.array(raw, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] == 0:
        raise InvalidSpace(f"distance matrix must be square and non-empty, got {d.shape}")
    if not np.all(np.isfinite(d)):
        raise InvalidSpace("distance matrix has non-finite entries")
    if np.any(d < 0):
        raise InvalidSpace("distance matrix has negative entries")
    n = d.shape[0]
    if labels is not None and len(labels) != n:
        raise InvalidSpace(f"{len(labels)} labels for {n} points")

    asym = np.abs(d - d.T)
    if np.any(asym > SYMMETRY_RTOL * np.maximum(d, d.T)):
        i, j = np.unravel_index(np.argmax(asym), asym.shape)
        raise NotSymmetric(f"d({i},{j})={d[i, j]!r} but d({j},{i})={d[j, i]!r}")
    d = 0.5 * (d + d.T)
    if np.any(np.diag(d) != 0):
        raise InvalidSpace("distance matrix has a nonzero diagonal")
    off = d + np.eye(n)
    if np.any(off == 0):
        i, j = np.argwhere(off == 0)[0]
        raise NotSeparated(f"points {i} and {j} are at distance 0")

    worst, triple = _worst_triangle_excess(d)
    if worst > 0:
        raise TriangleViolation(triple, worst)
    return PointedMetricSpace(_frozen(d), tuple(labels) if labels is not None else None)


def _worst_triangle_excess(d: np.ndarray) -> tuple[float, tuple[int, int, int]]:
    n = d.shape[0]
    worst, triple = 0.0, (0, 0, 0)
    for j in range(n):
        via = d[:, j, None] + d[None, j, :]
        excess = d - via * (1.0 + TRIANGLE_RTOL)
        i, k = np.unravel_index(np.argmax(excess), excess.shape)
        if excess[i, k] > worst:
            worst, triple = float(d[i, k] - via[i, k]), (int(i), j, int(k))
    return worst, triple


def lip_norm(f: LipschitzFunction) -> float:
    """Best Lipschitz constant of ``f`` over all pairs of distinct points."""
    return lip_norm_values(f.space.dist, f.values)


def lip_norm_values(dist: np.ndarray, values: np.ndarray) -> float:
    n = dist.shape[0]
    if n < 2:
        return 0.0
    iu = np.triu_indices(n, 1)
    diff = np.abs(values[:, None] - values[None, :])[iu]
    return float(np.max(diff / dist[iu]))


def restrict_space(M: PointedMetricSpace, keep: Iterable[int]) -> PointedMetricSpace:
    """Induced submetric on ``keep`` (which must contain the base point).

    Points keep their relative order, so the base point stays at index 0.
    """
    idx = sorted(set(int(k) for k in keep))
    if not idx:
        raise EmptySelection("no points selected")
    if idx[0] != 0:
        raise EmptySelection("selection must contain the base point 0")
    if idx[-1] >= M.n:
        raise EmptySelection(f"index {idx[-1]} out of range for {M.n} points")
    sub = M.dist[np.ix_(idx, idx)]
    labels = tuple(M.labels[i] for i in idx) if M.labels is not None else None
    return PointedMetricSpace(_frozen(sub), labels)


def restrict_function(f: LipschitzFunction, sub: PointedMetricSpace, keep: Iterable[int]) -> LipschitzFunction:
    idx = sorted(set(int(k) for k in keep))
    return LipschitzFunction(sub, f.values[idx])
