"""Finitely supported elements of the Lipschitz-free space F(M).

The norm is the optimal transport cost with the base point absorbing any
mass imbalance; :func:`dual_norm` solves the potential LP independently so
the two routes can certify each other.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.optimize import linprog

from .errors import NotALineSpace, SolverFailure
from .flow import min_cost_flow
from .metric import LipschitzFunction, PointedMetricSpace, validate_space

SUPPORT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class FreeVector:
    """sum_x coeff[x] * delta(x); coeff[0] is always 0 since delta(0) is the origin."""

    space: PointedMetricSpace
    coeff: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeff, dtype=float)
        if c.shape != (self.space.n,):
            raise ValueError(f"expected {self.space.n} coefficients, got shape {c.shape}")
        c[0] = 0.0
        c.setflags(write=False)
        object.__setattr__(self, "coeff", c)

    @classmethod
    def zero(cls, space: PointedMetricSpace) -> "FreeVector":
        return cls(space, np.zeros(space.n))

    @classmethod
    def delta(cls, space: PointedMetricSpace, x: int) -> "FreeVector":
        c = np.zeros(space.n)
        c[x] = 1.0
        return cls(space, c)

    @classmethod
    def molecule(cls, space: PointedMetricSpace, x: int, y: int) -> "FreeVector":
        """delta(x) - delta(y), not normalised."""
        c = np.zeros(space.n)
        c[x] += 1.0
        c[y] -= 1.0
        return cls(space, c)

    @classmethod
    def from_dict(cls, space: PointedMetricSpace, coeff: dict) -> "FreeVector":
        c = np.zeros(space.n)
        for k, v in coeff.items():
            c[int(k)] = float(v)
        return cls(space, c)

    def __add__(self, other: "FreeVector") -> "FreeVector":
        return FreeVector(self.space, self.coeff + other.coeff)

    def __sub__(self, other: "FreeVector") -> "FreeVector":
        return FreeVector(self.space, self.coeff - other.coeff)

    def __neg__(self) -> "FreeVector":
        return FreeVector(self.space, -self.coeff)

    def __mul__(self, c: float) -> "FreeVector":
        return FreeVector(self.space, c * self.coeff)

    __rmul__ = __mul__

    def pair(self, f: LipschitzFunction) -> float:
        """Evaluate the functional f at this element: sum_x coeff[x] f(x)."""
        return float(np.dot(self.coeff, f.values))


def _transport(dist: np.ndarray, coeff: np.ndarray, restrict: bool) -> float:
    if restrict:
        nodes = np.concatenate(([0], np.flatnonzero(coeff[1:]) + 1))
    else:
        nodes = np.arange(dist.shape[0])
    if nodes.size == 1:
        return 0.0
    supply = coeff[nodes].copy()
    supply[0] = -np.sum(coeff)
    return min_cost_flow(dist[np.ix_(nodes, nodes)], supply).cost


def free_norm(gamma: FreeVector, restrict: bool = True) -> float:
    """Transport norm of ``gamma``.

    With ``restrict`` the flow runs on supp(gamma) plus the base point only,
    which the triangle inequality makes exact; ``restrict=False`` solves on
    the complete graph of the whole space.
    """
    return _transport(gamma.space.dist, gamma.coeff, restrict)


def dual_norm(gamma: FreeVector) -> tuple[float, LipschitzFunction]:
    """Maximise <gamma, f> over 1-Lipschitz f with f(0) = 0 by linear programming."""
    M = gamma.space
    n = M.n
    if n == 1 or not np.any(gamma.coeff):
        return 0.0, LipschitzFunction.zero(M)
    # variables f_1..f_{n-1}; rows f_i - f_j <= d(i, j) for ordered i != j
    ii, jj = np.nonzero(~np.eye(n, dtype=bool))
    m = ii.size
    A = np.zeros((m, n))
    A[np.arange(m), ii] = 1.0
    A[np.arange(m), jj] -= 1.0
    res = linprog(
        -gamma.coeff[1:],
        A_ub=A[:, 1:],
        b_ub=M.dist[ii, jj],
        bounds=[(None, None)] * (n - 1),
        method="highs-ds",
        options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
    )
    if res.status != 0:
        raise SolverFailure(f"dual LP failed: {res.message}")
    f = np.concatenate(([0.0], res.x))
    return float(np.dot(gamma.coeff, f)), LipschitzFunction(M, f)


def support(gamma: FreeVector, tol: float = SUPPORT_TOL) -> frozenset[int]:
    return frozenset(int(i) for i in np.flatnonzero(np.abs(gamma.coeff) > tol))


@dataclass(frozen=True, eq=False)
class LinearFreeMap:
    """Linear map F(source) -> F(target) fixed by the images of delta(x).

    ``matrix[:, x]`` holds the target coefficients of the image of delta(x);
    column 0 is zero.
    """

    source: PointedMetricSpace
    target: PointedMetricSpace
    matrix: np.ndarray

    def __post_init__(self):
        A = np.array(self.matrix)
        if A.dtype != object:
            A = A.astype(float)
        if A.shape != (self.target.n, self.source.n):
            raise ValueError(f"matrix shape {A.shape} does not match spaces")
        A[:, 0] = 0
        A[0, :] = 0
        A.setflags(write=False)
        object.__setattr__(self, "matrix", A)

    @classmethod
    def from_images(cls, source: PointedMetricSpace, target: PointedMetricSpace,
                    images: Iterable[FreeVector]) -> "LinearFreeMap":
        """``images`` lists the image of delta(x) for x = 1..n-1."""
        A = np.zeros((target.n, source.n))
        for x, img in enumerate(images, start=1):
            A[:, x] = img.coeff
        return cls(source, target, A)

    @classmethod
    def identity(cls, space: PointedMetricSpace) -> "LinearFreeMap":
        return cls(space, space, np.eye(space.n))

    def __call__(self, gamma: FreeVector) -> FreeVector:
        return FreeVector(self.target, self.matrix @ gamma.coeff)

    def image(self, x: int) -> FreeVector:
        return FreeVector(self.target, self.matrix[:, x])

    @property
    def exact(self) -> bool:
        """True when the entries are Fractions rather than floats."""
        return self.matrix.dtype == object

    def __matmul__(self, other: "LinearFreeMap") -> "LinearFreeMap":
        if self.exact or other.exact:
            return LinearFreeMap(other.source, self.target, _sparse_product(self.matrix, other.matrix))
        return LinearFreeMap(other.source, self.target, self.matrix @ other.matrix)

    def is_identity(self) -> bool:
        """Exact comparison with the identity on the span of delta(1..n-1)."""
        if self.source is not self.target and not self.source.same_as(self.target):
            return False
        n = self.source.n
        eye = np.eye(n, dtype=int)
        eye[0, 0] = 0
        return all(self.matrix[i, j] == eye[i, j] for i in range(n) for j in range(n))

    def as_float(self) -> "LinearFreeMap":
        return LinearFreeMap(self.source, self.target, self.matrix.astype(float))

    def __mul__(self, c: float) -> "LinearFreeMap":
        return LinearFreeMap(self.source, self.target, c * self.matrix)

    __rmul__ = __mul__


def _sparse_product(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    C = np.zeros((A.shape[0], B.shape[1]), dtype=object)
    C[:] = 0
    for k in range(A.shape[1]):
        rows = [i for i in range(A.shape[0]) if A[i, k] != 0]
        cols = [j for j in range(B.shape[1]) if B[k, j] != 0]
        for i in rows:
            for j in cols:
                C[i, j] += A[i, k] * B[k, j]
    return C


def operator_norm(T: LinearFreeMap) -> float:
    """Exact norm of T: the unit ball of F(M) is the hull of the molecules."""
    if T.exact:
        T = T.as_float()
    S = T.source
    best = 0.0
    for x in range(S.n):
        for y in range(x + 1, S.n):
            img = T.matrix[:, x] - T.matrix[:, y]
            val = _transport(T.target.dist, img, True) / S.dist[x, y]
            best = max(best, val)
    return best


def line_space(points) -> PointedMetricSpace:
    t = np.asarray(points, dtype=float)
    if t.ndim != 1 or t.size == 0 or t[0] != 0.0 or np.any(np.diff(t) <= 0):
        raise NotALineSpace("points must be strictly increasing and start at 0")
    return validate_space(np.abs(t[:, None] - t[None, :]))


def _is_line(space: PointedMetricSpace, t: np.ndarray) -> bool:
    return space.n == t.size and np.allclose(
        space.dist, np.abs(t[:, None] - t[None, :]), rtol=1e-12, atol=0.0
    )


def verify_line_isometry(points, gamma: FreeVector) -> tuple[float, float]:
    """(free norm, L1 norm of sum_i a_i chi_[0, t_i)) for gamma on a subset of R+."""
    t = np.asarray(points, dtype=float)
    if t.ndim != 1 or t.size == 0 or t[0] != 0.0 or np.any(np.diff(t) <= 0):
        raise NotALineSpace("points must be strictly increasing and start at 0")
    if not _is_line(gamma.space, t):
        raise NotALineSpace("vector does not live on the line space of these points")
    tails = np.cumsum(gamma.coeff[::-1])[::-1]    # tails[k] = sum_{i >= k} a_i
    l1 = float(np.sum(np.diff(t) * np.abs(tails[1:])))
    return free_norm(gamma), l1


def verify_l1_isometry(n: int, gamma: FreeVector) -> tuple[float, float]:
    """(free norm, l1 norm of the image under delta(k) -> e_1 + ... + e_k) on {0..n}."""
    t = np.arange(n + 1, dtype=float)
    if not _is_line(gamma.space, t):
        raise NotALineSpace(f"vector does not live on {{0, ..., {n}}}")
    image = np.cumsum(gamma.coeff[::-1])[::-1][1:]   # coordinate j = sum_{k >= j} a_k
    return free_norm(gamma), float(np.sum(np.abs(image)))
