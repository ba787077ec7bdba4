"""The bounded space B(M, alpha) = {0} U {mu(x)} inside F(M).

Distances in B are always transport norms of mu(x) - mu(y); the two-sided
comparison with d_alpha is checked here, never used as a definition.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BoundViolated, EmptyAnnulus, NotBiLipschitz
from .free import FreeVector, LinearFreeMap, free_norm
from .metric import LipschitzFunction, PointedMetricSpace, lip_norm, validate_space
from .weights import WeightFunction, alpha_constants

BOUND_TOL = 1e-9


def zeta_values(M: PointedMetricSpace, alpha: WeightFunction) -> np.ndarray:
    z = np.zeros(M.n)
    if M.n > 1:
        z[1:] = alpha(M.dist[0, 1:])
    return z


def zeta(M: PointedMetricSpace, alpha: WeightFunction, x: int) -> float:
    return 0.0 if x == 0 else float(alpha(M.dist[0, x]))


def mu(M: PointedMetricSpace, alpha: WeightFunction, x: int) -> FreeVector:
    c = np.zeros(M.n)
    if x != 0:
        c[x] = 1.0 / zeta(M, alpha, x)
    return FreeVector(M, c)


def d_alpha(M: PointedMetricSpace, alpha: WeightFunction, x: int, y: int) -> float:
    if x == y:
        return 0.0
    return float(M.dist[x, y] / max(zeta(M, alpha, x), zeta(M, alpha, y)))


def d_alpha_matrix(M: PointedMetricSpace, alpha: WeightFunction) -> np.ndarray:
    z = zeta_values(M, alpha)
    denom = np.maximum(z[:, None], z[None, :])
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(denom > 0, M.dist / np.where(denom > 0, denom, 1.0), 0.0)
    return out


@dataclass(frozen=True, eq=False)
class BoundedSpace:
    """B(M, alpha); point i of ``space`` is mu(i) (point 0 is the origin)."""

    parent: PointedMetricSpace
    alpha: WeightFunction
    space: PointedMetricSpace
    zeta: np.ndarray = field(repr=False)

    @property
    def dist(self) -> np.ndarray:
        return self.space.dist

    @property
    def n(self) -> int:
        return self.space.n

    def mu(self, x: int) -> FreeVector:
        return mu(self.parent, self.alpha, x)


def build_bounded_space(M: PointedMetricSpace, alpha: WeightFunction) -> BoundedSpace:
    alpha_constants(alpha)   # rejects weights with D(alpha) = inf
    z = zeta_values(M, alpha)
    n = M.n
    D = np.zeros((n, n))
    inv = np.zeros(n)
    inv[1:] = 1.0 / z[1:]
    for x in range(n):
        for y in range(x + 1, n):
            c = np.zeros(n)
            c[x] += inv[x]
            c[y] -= inv[y]
            D[x, y] = D[y, x] = free_norm(FreeVector(M, c))
    labels = None
    if M.labels is not None:
        labels = ("0",) + tuple(f"mu({l})" for l in M.labels[1:])
    z.setflags(write=False)
    return BoundedSpace(M, alpha, validate_space(D, labels), z)


def _exact_diag(values) -> np.ndarray:
    out = np.empty(len(values), dtype=object)
    out[:] = [Fraction(v) for v in values]
    return out


def p_free(B: BoundedSpace, exact: bool = False) -> LinearFreeMap:
    """delta_M(x) -> zeta(x) delta_B(mu(x)).

    ``exact=True`` returns the same map with Fraction entries, so that
    compositions can be compared with the identity without rounding.
    """
    if exact:
        return LinearFreeMap(B.parent, B.space, np.diag(_exact_diag(B.zeta)))
    return LinearFreeMap(B.parent, B.space, np.diag(B.zeta))


def q_free(B: BoundedSpace, exact: bool = False) -> LinearFreeMap:
    """delta_B(mu(x)) -> mu(x) = delta_M(x) / zeta(x)."""
    if exact:
        d = _exact_diag(B.zeta)
        inv = np.array([Fraction(0)] + [1 / v for v in d[1:]], dtype=object)
        return LinearFreeMap(B.space, B.parent, np.diag(inv))
    inv = np.zeros(B.n)
    inv[1:] = 1.0 / B.zeta[1:]
    return LinearFreeMap(B.space, B.parent, np.diag(inv))


@dataclass(frozen=True)
class SandwichReport:
    pairs: int
    lower_slack: float    # min over pairs of d_B - d_alpha
    upper_slack: float    # min over pairs of (1 + K) d_alpha - d_B
    upper_factor: float   # 1 + K(alpha)
    worst_ratio: float    # max d_B / ((1 + K) d_alpha)

    @property
    def ok(self) -> bool:
        return self.lower_slack >= -BOUND_TOL and self.upper_slack >= -BOUND_TOL


def check_compbis(B: BoundedSpace, tol: float = BOUND_TOL, raise_on_fail: bool = True) -> SandwichReport:
    """d_alpha <= d_B <= (1 + K(alpha)) d_alpha on every pair of points."""
    K = alpha_constants(B.alpha).kconst
    da = d_alpha_matrix(B.parent, B.alpha)
    iu = np.triu_indices(B.n, 1)
    dB, dA = B.dist[iu], da[iu]
    if dB.size == 0:
        return SandwichReport(0, 0.0, 0.0, 1.0 + K, 0.0)
    lower = dB - dA
    upper = (1.0 + K) * dA - dB
    rep = SandwichReport(
        int(dB.size), float(lower.min()), float(upper.min()), 1.0 + K,
        float(np.max(dB / ((1.0 + K) * dA))),
    )
    if raise_on_fail and (rep.lower_slack < -tol or rep.upper_slack < -tol):
        raise BoundViolated(f"distance sandwich violated: {rep}")
    return rep


def witness_functions(M: PointedMetricSpace, alpha: WeightFunction, y: int) -> tuple[LipschitzFunction, LipschitzFunction]:
    """Two functions whose pairings with mu(x) - mu(y) dominate d_alpha(x, y).

    f(z) = d(z, y) - d(0, y) is 1-Lipschitz; g = min(zeta/zeta(y), 1) * min(|f|, d(0, y))
    handles the points with zeta(x) < zeta(y) that sit close to y.
    """
    if y == 0:
        raise ValueError("witness functions need y != 0")
    z = zeta_values(M, alpha)
    f = M.dist[:, y] - M.dist[0, y]
    g1 = np.minimum(z / z[y], 1.0)
    g2 = np.minimum(np.abs(f), M.dist[0, y])
    g = g1 * g2
    g[0] = 0.0
    return LipschitzFunction(M, f), LipschitzFunction(M, g)


@dataclass(frozen=True)
class MuNormReport:
    norms: np.ndarray       # ||mu(x)|| for x = 1..n-1
    upper: float            # D(alpha)
    lower: float            # min{1/Lip(alpha), d/alpha(d)}, d = distance from 0 to M \ {0}
    lower_zero: float | None  # 1/Lip(alpha) when alpha(0) = 0


def mu_norm_bounds(M: PointedMetricSpace, alpha: WeightFunction, tol: float = BOUND_TOL) -> MuNormReport:
    c = alpha_constants(alpha)
    norms = np.array([free_norm(mu(M, alpha, x)) for x in range(1, M.n)])
    if M.n > 1:
        d = float(M.dist[0, 1:].min())
        lower = min(1.0 / c.lip, d / float(alpha(d)))
    else:
        lower = 0.0
    lower_zero = 1.0 / c.lip if c.alpha0 == 0.0 else None
    rep = MuNormReport(norms, c.dconst, lower, lower_zero)
    if norms.size:
        if norms.max() > c.dconst + tol:
            raise BoundViolated(f"||mu(x)|| = {norms.max()} exceeds D(alpha) = {c.dconst}")
        if norms.min() < lower - tol:
            raise BoundViolated(f"||mu(x)|| = {norms.min()} below {lower}")
        if lower_zero is not None and norms.min() < lower_zero - tol:
            raise BoundViolated(f"||mu(x)|| = {norms.min()} below 1/Lip(alpha) = {lower_zero}")
    return rep


def _distortion(d_src: np.ndarray, d_dst: np.ndarray) -> float:
    """Lip(F) * Lip(F^-1) for the map that is the identity on indices."""
    iu = np.triu_indices(d_src.shape[0], 1)
    if iu[0].size == 0:
        return 1.0
    r = d_dst[iu] / d_src[iu]
    return float(r.max() / r.min())


def annulus_points(M: PointedMetricSpace, r: float, R: float) -> list[int]:
    return [x for x in range(1, M.n) if r <= M.dist[0, x] <= R]


def annulus_distortion(B: BoundedSpace, r: float, R: float) -> float:
    """Bi-Lipschitz distortion of x -> mu(x) on {x : r <= d(0, x) <= R}."""
    if not 0 < r < R:
        raise ValueError("need 0 < r < R")
    pts = annulus_points(B.parent, r, R)
    if not pts:
        raise EmptyAnnulus(f"no points with {r} <= d(0, x) <= {R}")
    idx = np.ix_(pts, pts)
    return _distortion(B.parent.dist[idx], B.dist[idx])


def annulus_distortion_bound(B: BoundedSpace, r: float, R: float) -> float:
    """(1 + K) * max zeta / min zeta over the annulus."""
    pts = annulus_points(B.parent, r, R)
    K = alpha_constants(B.alpha).kconst
    z = B.zeta[pts]
    return (1.0 + K) * float(z.max() / z.min())


def weight_distortion(M: PointedMetricSpace, alpha: WeightFunction, beta: WeightFunction) -> float:
    """Distortion of mu_alpha(x) -> mu_beta(x) between the two bounded spaces."""
    return _distortion(build_bounded_space(M, alpha).dist, build_bounded_space(M, beta).dist)


@dataclass(frozen=True, eq=False)
class FunctorMap:
    """B(f): mu_M(x) -> mu_N(f(x)), recorded as the index map of f."""

    source: BoundedSpace
    target: BoundedSpace
    index: np.ndarray

    def __call__(self, x: int) -> FreeVector:
        """Image of the point mu_M(x), as an element of F(N)."""
        return self.target.mu(int(self.index[x]))

    def then(self, other: "FunctorMap") -> "FunctorMap":
        """other o self."""
        return FunctorMap(self.source, other.target, other.index[self.index])

    def lipschitz(self) -> float:
        n = self.source.n
        iu = np.triu_indices(n, 1)
        if iu[0].size == 0:
            return 0.0
        num = self.target.dist[self.index[iu[0]], self.index[iu[1]]]
        return float(np.max(num / self.source.dist[iu]))

    def lipschitz_bound(self) -> float:
        """(1 + K) Lip(f) max_x zeta_M(x) / zeta_N(f(x))."""
        K = alpha_constants(self.source.alpha).kconst
        M, N = self.source.parent, self.target.parent
        iu = np.triu_indices(M.n, 1)
        if iu[0].size == 0:
            return 0.0
        lip_f = float(np.max(N.dist[self.index[iu[0]], self.index[iu[1]]] / M.dist[iu]))
        ratio = float(np.max(self.source.zeta[1:] / self.target.zeta[self.index[1:]]))
        return (1.0 + K) * lip_f * ratio


def functor_map(BM: BoundedSpace, BN: BoundedSpace, f) -> FunctorMap:
    """B(f) for a base-preserving injective point map f: M -> N."""
    idx = np.asarray(f, dtype=int)
    if idx.shape != (BM.n,) or idx[0] != 0:
        raise NotBiLipschitz("point map must be defined on every point and fix the base point")
    if np.any((idx < 0) | (idx >= BN.n)):
        raise NotBiLipschitz("point map leaves the target space")
    if len(set(idx.tolist())) != idx.size:
        raise NotBiLipschitz("point map identifies two points (zero distance collision)")
    if BM.alpha != BN.alpha:
        raise ValueError("both bounded spaces must use the same weight")
    idx.setflags(write=False)
    return FunctorMap(BM, BN, idx)
