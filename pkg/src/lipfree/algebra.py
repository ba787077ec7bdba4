"""Lip_0(M) as an algebra under (f . g)(x) = f(x) g(x) / zeta(x).

Value-level helpers accept float arrays or object arrays of Fractions, so
identities that hold exactly in the algebra can be checked without rounding.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
import numpy as np

from .errors import BoundViolated, NegativeShift
from .free import FreeVector, support
from .metric import LipschitzFunction, PointedMetricSpace, lip_norm
from .transform import BoundedSpace, p_free, zeta_values
from .weights import WeightFunction, alpha_constants

ZERO_TOL = 1e-12
MEMBER_TOL = 1e-10
BRUTE_FORCE_MAX_N = 12


def exact(values) -> np.ndarray:
    """Object array of Fractions holding the same (binary) values."""
    out = np.empty(len(values), dtype=object)
    out[:] = [v if isinstance(v, Fraction) else Fraction(float(v)) for v in values]
    return out


@dataclass(frozen=True, eq=False)
class AlgebraContext:
    space: PointedMetricSpace
    alpha: WeightFunction
    zeta: np.ndarray

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def exact_zeta(self) -> np.ndarray:
        return exact(self.zeta)

    def function(self, values) -> LipschitzFunction:
        return LipschitzFunction(self.space, values)


def make_context(M: PointedMetricSpace, alpha: WeightFunction) -> AlgebraContext:
    z = zeta_values(M, alpha)
    if np.any(z[1:] <= 0):
        raise ValueError("zeta must be positive off the base point")
    z.setflags(write=False)
    return AlgebraContext(M, alpha, z)


def odot_values(f: np.ndarray, g: np.ndarray, zeta: np.ndarray) -> np.ndarray:
    out = f * g
    out[1:] = out[1:] / zeta[1:]
    out[0] = 0
    return out


def odot(f: LipschitzFunction, g: LipschitzFunction, ctx: AlgebraContext) -> LipschitzFunction:
    return ctx.function(odot_values(f.values, g.values, ctx.zeta))


# --- norm estimate -------------------------------------------------------

@dataclass(frozen=True)
class ProductReport:
    trials: int
    bound: float         # D(alpha) (K(alpha) + 2)
    max_ratio: float     # max Lip(f . g) / (Lip f Lip g) observed

    @property
    def ok(self) -> bool:
        return self.max_ratio <= self.bound + 1e-9


def product_ratio(f: LipschitzFunction, g: LipschitzFunction, ctx: AlgebraContext) -> float:
    den = lip_norm(f) * lip_norm(g)
    return 0.0 if den == 0 else lip_norm(odot(f, g, ctx)) / den


def submultiplicativity_check(ctx: AlgebraContext, trials: int, rng: np.random.Generator,
                              tol: float = 1e-9) -> ProductReport:
    """Random f, g never push Lip(f . g) above D(K + 2) Lip(f) Lip(g)."""
    bound = alpha_constants(ctx.alpha).product_constant
    worst = 0.0
    for _ in range(trials):
        f = ctx.function(_random_values(ctx.space, rng))
        g = ctx.function(_random_values(ctx.space, rng))
        worst = max(worst, product_ratio(f, g, ctx))
    if worst > bound + tol:
        raise BoundViolated(f"product ratio {worst} exceeds {bound}")
    return ProductReport(trials, bound, worst)


def _random_values(M: PointedMetricSpace, rng: np.random.Generator) -> np.ndarray:
    """A mix of generic and distance-built functions so extreme ratios show up."""
    v = np.zeros(M.n)
    kind = rng.integers(3)
    if kind == 0:
        v[1:] = rng.normal(size=M.n - 1) * M.dist[0, 1:]
    elif kind == 1:
        y = rng.integers(M.n)
        v = M.dist[:, y] - M.dist[0, y]
    else:
        a, b = rng.integers(M.n, size=2)
        v = np.minimum(M.dist[0], rng.uniform(0.1, 2) * M.dist[:, a]) - rng.uniform(-1, 1) * M.dist[0] * (b % 2)
    v[0] = 0.0
    return v * rng.choice([-1.0, 1.0])


def optimality_example(eps: float = 1e-3) -> tuple[float, float, float]:
    """(Lip(f . g), Lip f, Lip g) on {0, 1, 1 + eps, 2} with alpha = 3t, f = 1 - |t - 1|, g = -f."""
    from .free import line_space

    t = np.array([0.0, 1.0, 1.0 + eps, 2.0])
    M = line_space(t)
    ctx = make_context(M, WeightFunction.linear(3.0))
    f = ctx.function(1.0 - np.abs(t - 1.0))
    g = -f
    return lip_norm(odot(f, g, ctx)), lip_norm(f), lip_norm(g)


# --- transport to the bounded space --------------------------------------

def q_dual_values(f: np.ndarray, zeta: np.ndarray) -> np.ndarray:
    out = f.copy()
    out[1:] = f[1:] / zeta[1:]
    out[0] = 0
    return out


def p_dual_values(h: np.ndarray, zeta: np.ndarray) -> np.ndarray:
    out = h * zeta
    out[0] = 0
    return out


def q_dual(f: LipschitzFunction, B: BoundedSpace) -> LipschitzFunction:
    """f -> (mu(x) -> f(x) / zeta(x)), a function on B(M, alpha)."""
    return LipschitzFunction(B.space, q_dual_values(f.values, B.zeta))


def p_dual(h: LipschitzFunction, B: BoundedSpace) -> LipschitzFunction:
    """h -> (x -> zeta(x) h(mu(x))), the inverse of :func:`q_dual`."""
    return LipschitzFunction(B.parent, p_dual_values(h.values, B.zeta))


def unit(ctx: AlgebraContext) -> tuple[LipschitzFunction, float]:
    """zeta is the unit of the algebra; returns it with its Lipschitz norm."""
    z = ctx.function(ctx.zeta)
    return z, lip_norm(z)


# --- hulls and ideals ----------------------------------------------------

def _as_basis(Y, n: int) -> np.ndarray:
    if isinstance(Y, np.ndarray):
        A = np.atleast_2d(np.asarray(Y, dtype=float)) if Y.size else np.zeros((0, n))
    else:
        rows = [y.values if isinstance(y, LipschitzFunction) else np.asarray(y, dtype=float) for y in Y]
        A = np.array(rows, dtype=float).reshape(len(rows), n)
    return A


def hull(Y, ctx: AlgebraContext, tol: float = ZERO_TOL) -> frozenset[int]:
    """Common zeros of the functions in Y (always contains the base point)."""
    A = _as_basis(Y, ctx.n)
    if A.shape[0] == 0:
        return frozenset(range(ctx.n))
    return frozenset(int(x) for x in np.flatnonzero(np.all(np.abs(A) <= tol, axis=0)))


def ideal_of(K, ctx: AlgebraContext) -> np.ndarray:
    """Basis (rows) of I(K) = {f : f = 0 on K}: indicators of the points outside K."""
    K = set(K)
    if 0 not in K:
        raise ValueError("K must contain the base point")
    rows = [x for x in range(1, ctx.n) if x not in K]
    A = np.zeros((len(rows), ctx.n))
    A[np.arange(len(rows)), rows] = 1.0
    return A


def _rank(A: np.ndarray) -> int:
    return 0 if A.shape[0] == 0 else int(np.linalg.matrix_rank(A, tol=MEMBER_TOL))


def in_span(v: np.ndarray, A: np.ndarray, tol: float = MEMBER_TOL) -> bool:
    if A.shape[0] == 0:
        return bool(np.all(np.abs(v) <= tol))
    coef, *_ = np.linalg.lstsq(A.T, v, rcond=None)
    return bool(np.linalg.norm(A.T @ coef - v) <= tol * max(1.0, np.linalg.norm(v)))


def same_subspace(A: np.ndarray, B: np.ndarray) -> bool:
    if _rank(A) != _rank(B):
        return False
    return all(in_span(b, A) for b in B) and all(in_span(a, B) for a in A)


@dataclass(frozen=True)
class IdealVerdict:
    is_ideal: bool
    equals_hull_ideal: bool
    hull: frozenset[int]
    witness: tuple[int, int] | None   # (basis row, point) whose product leaves Y

    @property
    def consistent(self) -> bool:
        return self.is_ideal == self.equals_hull_ideal


def ideal_check(Y, ctx: AlgebraContext) -> IdealVerdict:
    """Decide whether span(Y) is an ideal and whether it equals I(H(Y)).

    By bilinearity it suffices to multiply basis rows by point indicators.
    Raises BoundViolated if the two verdicts disagree.
    """
    A = _as_basis(Y, ctx.n)
    witness = None
    for r, row in enumerate(A):
        for x in range(1, ctx.n):
            e = np.zeros(ctx.n)
            e[x] = 1.0
            if not in_span(odot_values(row, e, ctx.zeta), A):
                witness = (r, x)
                break
        if witness:
            break
    H = hull(A, ctx)
    verdict = IdealVerdict(witness is None, same_subspace(A, ideal_of(H, ctx)), H, witness)
    if not verdict.consistent:
        raise BoundViolated(f"ideal verdicts disagree: {verdict}")
    return verdict


# --- characters ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Character:
    """omega(f) = sum_x values[x] f(x); ``point`` is the x with omega = mu(x)."""

    context: AlgebraContext
    values: np.ndarray
    point: int

    def __call__(self, f) -> float:
        v = f.values if isinstance(f, LipschitzFunction) else f
        return float(np.dot(self.values, v))

    def as_free_vector(self) -> FreeVector:
        return FreeVector(self.context.space, self.values)


ZERO_FUNCTIONAL = None   # the extra element of Delta_0; not a Character


def _quadratic_roots(z: float) -> list[float]:
    # z a^2 - a = 0
    return [0.0, 1.0 / z]


def characters(ctx: AlgebraContext) -> list[Character]:
    """All nonzero multiplicative functionals, by solving on the indicator basis.

    With a_x = omega(1_x): 1_x . 1_y = 0 for x != y and 1_x . 1_x = 1_x / zeta(x)
    give a_x a_y = 0 and a_x^2 = a_x / zeta(x).
    """
    n = ctx.n
    roots = [_quadratic_roots(ctx.zeta[x]) for x in range(1, n)]
    found = []
    if n - 1 <= BRUTE_FORCE_MAX_N:
        candidates = itertools.product(*roots)
    else:
        # cross terms allow at most one nonzero coordinate
        candidates = (tuple(r[1] if i == k else 0.0 for i, r in enumerate(roots)) for k in range(n - 1))
    for a in candidates:
        a = np.asarray(a)
        nz = np.flatnonzero(a)
        if nz.size != 1:   # zero functional, or a_x a_y != 0 for some x != y
            continue
        vals = np.concatenate(([0.0], a))
        found.append(Character(ctx, vals, int(nz[0]) + 1))
    return found


def is_multiplicative(values: np.ndarray, ctx: AlgebraContext, tol: float = 1e-12) -> bool:
    """omega(1_x . 1_y) = omega(1_x) omega(1_y) for all basis pairs."""
    n = ctx.n
    for x in range(1, n):
        for y in range(x, n):
            ex, ey = np.zeros(n), np.zeros(n)
            ex[x], ey[y] = 1.0, 1.0
            lhs = float(np.dot(values, odot_values(ex, ey, ctx.zeta)))
            rhs = values[x] * values[y]
            if abs(lhs - rhs) > tol * max(1.0, abs(rhs)):
                return False
    return True


# --- composition operators -----------------------------------------------

@dataclass(frozen=True, eq=False)
class CompositionOperator:
    """D_g(f)(x) = zeta_N(x) / zeta_M(g(x)) * f(g(x)) for g: N -> M."""

    source: AlgebraContext   # functions on M
    target: AlgebraContext   # functions on N
    g: np.ndarray

    def weights(self, exact_arith: bool = False) -> np.ndarray:
        zN = self.target.exact_zeta if exact_arith else self.target.zeta
        zM = self.source.exact_zeta if exact_arith else self.source.zeta
        w = np.zeros(self.target.n, dtype=object if exact_arith else float)
        w[0] = 0
        for x in range(1, self.target.n):
            w[x] = zN[x] / zM[self.g[x]]
        return w

    def apply_values(self, f: np.ndarray) -> np.ndarray:
        exact_arith = f.dtype == object
        out = self.weights(exact_arith) * f[self.g]
        out[0] = 0
        return out

    def __call__(self, f: LipschitzFunction) -> LipschitzFunction:
        return self.target.function(self.apply_values(f.values))

    def matrix(self) -> np.ndarray:
        A = np.zeros((self.target.n, self.source.n))
        w = self.weights()
        A[np.arange(1, self.target.n), self.g[1:]] = w[1:]
        return A


def composition_operator(g, ctxM: AlgebraContext, ctxN: AlgebraContext) -> CompositionOperator:
    idx = np.asarray(g, dtype=int)
    if idx.shape != (ctxN.n,) or idx[0] != 0:
        raise ValueError("g must be defined on every point of N and fix the base point")
    if np.any(idx[1:] == 0) or np.any((idx < 0) | (idx >= ctxM.n)):
        raise ValueError("g must map N \\ {0} into M \\ {0}")
    idx.setflags(write=False)
    return CompositionOperator(ctxM, ctxN, idx)


# --- order structure -----------------------------------------------------

def lattice_join_shifted(f: LipschitzFunction, g: LipschitzFunction, c: float,
                         ctx: AlgebraContext) -> LipschitzFunction:
    """f v (g - c zeta), pointwise."""
    if c < 0:
        raise NegativeShift(f"shift must be nonnegative, got {c}")
    return ctx.function(lattice_join_values(f.values, g.values, c, ctx.zeta))


def lattice_join_values(f, g, c, zeta):
    return np.maximum(f, g - c * zeta)


def transported_join_values(f, g, c, zeta):
    """P(Q(f) v (Q(g) - c)), evaluated coordinate-wise (base value stays 0)."""
    qf, qg = q_dual_values(f, zeta), q_dual_values(g, zeta)
    inner = np.maximum(qf, qg - c)
    inner[0] = 0
    return p_dual_values(inner, zeta)


# --- supports -----------------------------------------------------------

@dataclass(frozen=True)
class SupportTransfer:
    source_support: frozenset[int]
    image_support: frozenset[int]

    @property
    def ok(self) -> bool:
        # point x of M corresponds to point mu(x) of B under the same index
        return self.source_support == self.image_support


def support_transfer_check(gamma: FreeVector, B: BoundedSpace) -> SupportTransfer:
    """supp P(gamma) is the mu-image of supp gamma."""
    rep = SupportTransfer(support(gamma), support(p_free(B)(gamma)))
    if not rep.ok:
        raise BoundViolated(f"support transfer failed: {rep}")
    return rep

