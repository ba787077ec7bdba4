import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lipfree.errors import EmptyAnnulus, NotBiLipschitz
from lipfree.free import FreeVector, free_norm, operator_norm
from lipfree.metric import lip_norm, validate_space
from lipfree.transform import (
    annulus_distortion,
    annulus_distortion_bound,
    build_bounded_space,
    check_compbis,
    d_alpha,
    functor_map,
    mu,
    mu_norm_bounds,
    p_free,
    q_free,
    weight_distortion,
    witness_functions,
    zeta,
)
from lipfree.weights import WeightFunction, alpha_constants

from conftest import ALPHAS, line, random_space

ID, SH, T3 = ALPHAS["identity"], ALPHAS["shifted"], ALPHAS["3t"]


def test_zeta_mu_d_alpha_examples():
    M = line(0, 1, 2)
    assert zeta(M, ID, 0) == 0.0
    assert zeta(M, ID, 2) == 2.0
    assert zeta(M, SH, 2) == 3.0
    assert not np.any(mu(M, ID, 0).coeff)
    assert mu(M, SH, 1).coeff[1] == 0.5
    assert d_alpha(M, ID, 0, 0) == 0.0
    assert d_alpha(M, ID, 1, 2) == 0.5
    assert d_alpha(M, ID, 2, 0) == 1.0


def test_mu_has_unit_norm_for_identity():
    M = random_space(2, 12)
    for x in range(1, M.n):
        assert free_norm(mu(M, ID, x)) == pytest.approx(1.0, rel=1e-14)


def test_single_point_space():
    B = build_bounded_space(validate_space([[0.0]]), ID)
    assert B.n == 1


def test_identity_weight_puts_points_on_unit_sphere():
    B = build_bounded_space(random_space(5, 15), ID)
    assert B.dist[0, 1:] == pytest.approx(np.ones(B.n - 1), rel=1e-14)


def test_base_distance_is_d_over_zeta(alpha):
    M = random_space(6, 12)
    B = build_bounded_space(M, alpha)
    assert B.dist[0, 1:] == pytest.approx(M.dist[0, 1:] / B.zeta[1:], rel=1e-14)
    assert B.dist.max() <= 2 * alpha_constants(alpha).dconst + 1e-12


@given(st.integers(0, 10_000), st.integers(2, 30), st.sampled_from(sorted(ALPHAS)))
@settings(max_examples=40, deadline=None)
def test_sandwich(seed, n, name):
    rep = check_compbis(build_bounded_space(random_space(seed, n), ALPHAS[name]))
    assert rep.ok


def test_sandwich_two_points_any_weight():
    w = WeightFunction.piecewise([[0, 2], [1, 0.5], [3, 4]], 0.25)
    for d in (0.3, 1.0, 7.0):
        assert check_compbis(build_bounded_space(line(0, d), w)).ok


def test_sandwich_lower_tight_against_base():
    t = np.r_[0.0, np.sort(np.random.default_rng(1).uniform(0.1, 10, 10))]
    M = line(*t)
    B = build_bounded_space(M, ID)
    assert B.dist[0, 1:] == pytest.approx([d_alpha(M, ID, x, 0) for x in range(1, M.n)], rel=1e-14)


def test_p_q_are_inverse_exactly(alpha):
    B = build_bounded_space(random_space(8, 10), alpha)
    assert (q_free(B, exact=True) @ p_free(B, exact=True)).is_identity()
    assert (p_free(B, exact=True) @ q_free(B, exact=True)).is_identity()


@given(st.integers(0, 10_000), st.integers(2, 12), st.sampled_from(sorted(ALPHAS)))
@settings(max_examples=20, deadline=None)
def test_p_q_norms(seed, n, name):
    alpha = ALPHAS[name]
    B = build_bounded_space(random_space(seed, n), alpha)
    nq = operator_norm(q_free(B))
    assert nq <= 1 + 1e-9
    assert operator_norm(p_free(B)) * nq <= 1 + 2 * alpha_constants(alpha).kconst + 1e-9


def test_witness_examples():
    M = random_space(21, 14)
    for alpha in ALPHAS.values():
        z = np.array([zeta(M, alpha, x) for x in range(M.n)])
        for y in range(1, M.n):
            f, g = witness_functions(M, alpha, y)
            assert lip_norm(f) <= 1 + 1e-12
            for x in range(M.n):
                diff = mu(M, alpha, x) - mu(M, alpha, y)
                da = d_alpha(M, alpha, x, y)
                if x == y:
                    assert diff.pair(f) == 0 and diff.pair(g) == 0
                elif x != 0 and z[x] >= z[y]:
                    assert abs(diff.pair(f)) >= da - 1e-12
                elif x != 0 and M.dist[x, y] < M.dist[0, y]:
                    assert diff.pair(g) == pytest.approx(-da, abs=1e-12)
                assert max(abs(diff.pair(f)), abs(diff.pair(g))) >= da - 1e-12


def test_witness_needs_nonbase_point():
    with pytest.raises(ValueError):
        witness_functions(line(0, 1), ID, 0)


def test_mu_norm_bounds():
    M = random_space(9, 10)
    rep = mu_norm_bounds(M, ID)
    assert rep.norms == pytest.approx(1.0) and rep.lower == 1.0 and rep.upper == 1.0
    rep = mu_norm_bounds(M, T3)
    assert rep.norms == pytest.approx(1 / 3) and rep.lower_zero == pytest.approx(1 / 3)
    rep = mu_norm_bounds(line(0, 1, 3), SH)
    assert rep.norms[0] == 0.5 and rep.lower == 0.5


def test_annulus():
    M = random_space(10, 15, kind="sphere_shell")
    B = build_bounded_space(M, ID)
    r = np.sort(M.dist[0, 1:])
    assert annulus_distortion(B, r[3] - 1e-9, r[3] + 1e-9) == 1.0
    prev = 1.0
    for k in range(1, len(r)):
        dist = annulus_distortion(B, r[0], r[k])
        assert dist >= prev - 1e-12          # nested annuli can only grow the distortion
        assert dist <= annulus_distortion_bound(B, r[0], r[k]) + 1e-9
        prev = dist
    with pytest.raises(EmptyAnnulus):
        annulus_distortion(B, 100.0, 200.0)


def test_unit_sphere_annulus_bound():
    P = np.random.default_rng(3).normal(size=(12, 3))
    P /= np.linalg.norm(P, axis=1, keepdims=True)
    P = np.r_[np.zeros((1, 3)), P]
    M = validate_space(np.linalg.norm(P[:, None] - P[None], axis=-1))
    B = build_bounded_space(M, ID)
    assert annulus_distortion(B, 0.5, 1.5) <= 2.0 + 1e-9


def test_weight_equivalence():
    M = random_space(12, 12)
    w0 = WeightFunction.piecewise([[0, 0], [1, 2], [5, 3]], 1.5)
    w1 = WeightFunction.piecewise([[0, 2], [2, 1], [4, 6]], 0.7)
    assert np.isfinite(weight_distortion(M, w0, ID))
    assert np.isfinite(weight_distortion(M, w1, SH))
    assert weight_distortion(M, ID, ID) == pytest.approx(1.0)


def test_functor_laws(alpha):
    r = np.random.default_rng(4)
    M, N, P = (random_space(s, 8) for s in (30, 31, 32))
    BM, BN, BP = (build_bounded_space(S, alpha) for S in (M, N, P))
    f = np.r_[0, 1 + r.permutation(7)]
    g = np.r_[0, 1 + r.permutation(7)]
    ident = functor_map(BM, BM, np.arange(8))
    for x in range(8):
        assert np.array_equal(ident(x).coeff, BM.mu(x).coeff)
    comp = functor_map(BM, BN, f).then(functor_map(BN, BP, g))
    direct = functor_map(BM, BP, g[f])
    for x in range(8):
        assert np.array_equal(comp(x).coeff, direct(x).coeff)
    Bf = functor_map(BM, BN, f)
    assert Bf.lipschitz() <= Bf.lipschitz_bound() + 1e-9


def _cloud(P):
    return validate_space(np.linalg.norm(P[:, None] - P[None], axis=-1))


def test_functor_isometry_for_identity_weight():
    r = np.random.default_rng(40)
    P = np.r_[np.zeros((1, 2)), r.uniform(-5, 5, size=(8, 2))]
    theta = 0.7
    rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    perm = np.r_[0, 1 + r.permutation(8)]
    Q = np.empty_like(P)
    Q[perm] = P @ rot.T          # point x of M lands on point perm[x] of N
    M, N = _cloud(P), _cloud(Q)
    BM, BN = build_bounded_space(M, ID), build_bounded_space(N, ID)
    Bf = functor_map(BM, BN, perm)
    assert BN.dist[np.ix_(Bf.index, Bf.index)] == pytest.approx(BM.dist, abs=1e-9)


def test_functor_rejects_collisions():
    BM = build_bounded_space(line(0, 1, 2), ID)
    with pytest.raises(NotBiLipschitz):
        functor_map(BM, BM, [0, 1, 1])
    with pytest.raises(NotBiLipschitz):
        functor_map(BM, BM, [1, 0, 2])
