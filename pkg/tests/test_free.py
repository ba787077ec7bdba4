import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from lipfree.errors import NotALineSpace
from lipfree.flow import min_cost_flow
from lipfree.free import (
    FreeVector,
    LinearFreeMap,
    dual_norm,
    free_norm,
    line_space,
    operator_norm,
    support,
    verify_l1_isometry,
    verify_line_isometry,
)
from lipfree.metric import lip_norm, restrict_space, validate_space
from lipfree.transform import build_bounded_space, p_free
from lipfree.weights import WeightFunction

from conftest import line, random_space


def primal_lp(M, coeff):
    """Independent oracle: min-cost flow written as an LP over all arcs."""
    n = M.n
    supply = np.array(coeff, dtype=float)
    supply[0] = -supply[1:].sum()
    ii, jj = np.nonzero(~np.eye(n, dtype=bool))
    A = np.zeros((n, ii.size))
    A[ii, np.arange(ii.size)] += 1.0
    A[jj, np.arange(ii.size)] -= 1.0
    res = linprog(M.dist[ii, jj], A_eq=A, b_eq=supply, bounds=(0, None), method="highs")
    assert res.status == 0
    return res.fun


def test_delta_norm_is_base_distance():
    M = random_space(3, 9)
    for x in range(1, M.n):
        assert free_norm(FreeVector.delta(M, x)) == pytest.approx(M.dist[0, x], rel=1e-15)


def test_molecule_norm_is_distance():
    M = random_space(4, 9)
    for x in range(M.n):
        for y in range(x + 1, M.n):
            assert free_norm(FreeVector.molecule(M, y, x)) == pytest.approx(M.dist[x, y], rel=1e-14)


def _two_point_plans(a, b, dx0, d0y, dxy, steps=1001):
    # x ships s to y and a - s to 0; 0 ships b - s to y
    s = np.linspace(0.0, b, steps)
    return float(np.min(s * dxy + (a - s) * dx0 + (b - s) * d0y))


def test_weighted_pair_against_plan_enumeration():
    # d(0,x) = 3, d(0,y) = 4, d(x,y) = 2; gamma = 2 delta(x) - delta(y)
    M = validate_space([[0, 3, 4], [3, 0, 2], [4, 2, 0]])
    g = FreeVector(M, [0, 2.0, -1.0])
    assert _two_point_plans(2, 1, 3, 4, 2) == pytest.approx(5.0)
    assert free_norm(g) == pytest.approx(5.0, abs=1e-12)


@given(st.integers(0, 10_000), st.floats(0.1, 5), st.floats(0.1, 1))
@settings(max_examples=40, deadline=None)
def test_weighted_pair_formula(seed, a, frac):
    M = random_space(seed, 3)
    b = a * frac
    g = FreeVector(M, [0, a, -b])
    dx0, d0y, dxy = M.dist[1, 0], M.dist[0, 2], M.dist[1, 2]
    closed = min(a * dx0 + b * d0y, b * dxy + (a - b) * dx0)
    assert free_norm(g) == pytest.approx(closed, rel=1e-12)
    assert _two_point_plans(a, b, dx0, d0y, dxy) == pytest.approx(closed, rel=1e-9)


@given(st.integers(0, 10_000), st.integers(2, 8))
@settings(max_examples=40, deadline=None)
def test_flow_matches_primal_lp(seed, n):
    M = random_space(seed, n)
    c = np.random.default_rng(seed).normal(size=n)
    g = FreeVector(M, c)
    assert free_norm(g, restrict=False) == pytest.approx(primal_lp(M, g.coeff), rel=1e-8, abs=1e-9)


@given(st.integers(0, 10_000), st.integers(2, 40))
@settings(max_examples=40, deadline=None)
def test_strong_duality(seed, n):
    M = random_space(seed, n)
    r = np.random.default_rng(seed)
    g = FreeVector(M, r.normal(size=n) * (r.random(n) < 0.5))
    value, f = dual_norm(g)
    assert value == pytest.approx(free_norm(g), abs=1e-9)
    assert lip_norm(f) <= 1 + 1e-9


def test_dual_examples():
    M = random_space(11, 7)
    value, f = dual_norm(FreeVector.delta(M, 3))
    assert value == pytest.approx(M.dist[0, 3], abs=1e-12)
    assert dual_norm(FreeVector.zero(M))[0] == 0.0


@given(st.integers(0, 10_000), st.integers(2, 15), st.floats(-4, 4))
@settings(max_examples=40, deadline=None)
def test_norm_axioms(seed, n, c):
    M = random_space(seed, n)
    r = np.random.default_rng(seed)
    g, h = FreeVector(M, r.normal(size=n)), FreeVector(M, r.normal(size=n))
    assert free_norm(c * g) == pytest.approx(abs(c) * free_norm(g), rel=1e-12, abs=1e-12)
    assert free_norm(g + h) <= free_norm(g) + free_norm(h) + 1e-12


@given(st.integers(0, 10_000), st.integers(3, 15))
@settings(max_examples=30, deadline=None)
def test_subspace_embedding_is_isometric(seed, n):
    M = random_space(seed, n)
    r = np.random.default_rng(seed)
    keep = sorted({0, *r.choice(np.arange(1, n), size=max(1, n // 2), replace=False).tolist()})
    sub = restrict_space(M, keep)
    c_sub = r.normal(size=len(keep))
    c_full = np.zeros(n)
    c_full[keep] = c_sub
    a = free_norm(FreeVector(sub, c_sub), restrict=False)
    b = free_norm(FreeVector(M, c_full), restrict=False)
    assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


def test_min_cost_flow_reverses_flow_when_needed():
    # greedy s1 -> t1 must later be undone so that s2 can use t1
    big = 100.0
    cost = np.full((4, 4), big)
    np.fill_diagonal(cost, 0.0)
    cost[0, 2], cost[0, 3], cost[1, 2], cost[1, 3] = 1.0, 2.0, 1.0, 10.0
    sol = min_cost_flow(cost, [1.0, 1.0, -1.0, -1.0])
    assert sol.cost == pytest.approx(3.0)
    assert sol.flow[0, 3] == pytest.approx(1.0) and sol.flow[1, 2] == pytest.approx(1.0)
    assert sol.flow[0, 2] == 0.0


def test_support():
    M = line(0, 1, 2, 3)
    assert support(FreeVector.delta(M, 2)) == {2}
    assert support(FreeVector.zero(M)) == frozenset()
    assert support(FreeVector.molecule(M, 1, 3)) == {1, 3}


def test_operator_norm_identity_and_scaling():
    M = random_space(5, 8)
    I = LinearFreeMap.identity(M)
    assert operator_norm(I) == pytest.approx(1.0)
    assert operator_norm(-2.5 * I) == pytest.approx(2.5)


def test_operator_norm_of_p_on_two_points():
    M = line(0, 2.0)
    B = build_bounded_space(M, WeightFunction.identity())
    assert operator_norm(p_free(B)) == pytest.approx(1.0)


@given(st.integers(0, 10_000), st.integers(2, 10))
@settings(max_examples=30, deadline=None)
def test_operator_norm_dominates_samples(seed, n):
    M = random_space(seed, n)
    r = np.random.default_rng(seed)
    N = random_space(seed + 1, n)
    T = LinearFreeMap(M, N, r.normal(size=(n, n)))
    bound = operator_norm(T)
    for _ in range(10):
        g = FreeVector(M, r.normal(size=n))
        if free_norm(g) > 0:
            assert free_norm(T(g)) / free_norm(g) <= bound + 1e-9


def test_line_isometry_examples():
    t = [0.0, 1.5, 4.0]
    M = line_space(t)
    assert verify_line_isometry(t, FreeVector.delta(M, 2)) == pytest.approx((4.0, 4.0))
    t = [0.0, 1.0, 2.0]
    a, b = verify_line_isometry(t, FreeVector.molecule(line_space(t), 1, 2))
    assert a == pytest.approx(1.0) and b == pytest.approx(1.0)


def test_line_isometry_rejects_other_spaces():
    with pytest.raises(NotALineSpace):
        verify_line_isometry([0, 1, 2], FreeVector.delta(line(0, 1, 3), 1))
    with pytest.raises(NotALineSpace):
        line_space([1, 2])


def test_l1_examples():
    M = line_space(np.arange(6.0))
    for k in range(1, 6):
        assert verify_l1_isometry(5, FreeVector.delta(M, k)) == pytest.approx((k, k))
    assert verify_l1_isometry(5, FreeVector.molecule(M, 1, 2)) == pytest.approx((1.0, 1.0))


@given(st.integers(0, 10_000), st.integers(1, 20))
@settings(max_examples=40, deadline=None)
def test_l1_and_line_isometry_random(seed, n):
    r = np.random.default_rng(seed)
    M = line_space(np.arange(n + 1.0))
    a, b = verify_l1_isometry(n, FreeVector(M, r.normal(size=n + 1)))
    assert a == pytest.approx(b, abs=1e-9)
    t = np.r_[0.0, np.sort(r.uniform(0.01, 10, size=n))]
    if np.all(np.diff(t) > 0):
        a, b = verify_line_isometry(t, FreeVector(line_space(t), r.normal(size=n + 1)))
        assert a == pytest.approx(b, abs=1e-9)
