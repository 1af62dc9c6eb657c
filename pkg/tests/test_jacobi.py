import math

import numpy as np
import pytest

from gravbounds.errors import DomainError
from gravbounds.jacobi import build_geometry, check_representability, jacobi_matrix


def test_n2_geometry():
    geom = build_geometry(2)
    assert geom.alpha == pytest.approx(math.sqrt(2))
    assert geom.beta == 0.0
    assert geom.delta == 0.0
    assert geom.lam == 0.5
    assert geom.gamma == 1
    r = 1 / math.sqrt(2)
    np.testing.assert_allclose(geom.B, [[r, r], [r, -r]], atol=1e-15)


def test_n3_last_row():
    geom = build_geometry(3)
    a = 1 / math.sqrt(6)
    assert geom.a == pytest.approx(a)
    np.testing.assert_allclose(geom.B[-1], [a, a, -2 * a], atol=1e-15)
    assert geom.lam == pytest.approx(2 / 3)


@pytest.mark.parametrize("N", [4, 7, 20])
def test_last_row_general(N):
    geom = build_geometry(N)
    expected = np.full(N, geom.a)
    expected[-1] = -(N - 1) * geom.a
    np.testing.assert_allclose(geom.B[-1], expected, atol=1e-15)


@pytest.mark.parametrize("N", range(2, 51))
def test_orthonormal_rows(N):
    B = jacobi_matrix(N)
    assert np.max(np.abs(B @ B.T - np.eye(N))) <= 1e-12
    assert B[0].sum() == pytest.approx(math.sqrt(N), abs=1e-12)


@pytest.mark.parametrize("N", [2, 3, 9])
def test_row_structure(N):
    B = jacobi_matrix(N)
    for k in range(2, N + 1):
        row = B[k - 1]
        np.testing.assert_allclose(row[: k - 1], 1 / math.sqrt(k * (k - 1)))
        assert row[k - 1] == pytest.approx(-math.sqrt((k - 1) / k))
        assert np.all(row[k:] == 0.0)


@pytest.mark.parametrize("N", range(2, 51))
def test_coefficient_relations(N):
    geom = build_geometry(N)
    tol = 1e-12
    assert abs(geom.alpha**2 + geom.beta**2 - 2) <= tol
    assert abs(geom.a**2 + geom.beta**2 - geom.lam) <= tol
    assert abs(1 / geom.alpha**2 - geom.lam) <= tol
    assert abs((N - 1) * geom.a - 1 / geom.alpha) <= tol
    assert abs(N * geom.a - geom.alpha) <= tol
    assert abs(geom.delta - geom.beta / geom.alpha) <= tol
    assert abs(1 + geom.delta**2 - 2 * geom.lam) <= tol


def test_representability_n2_trivial():
    rep = check_representability(build_geometry(2))
    assert rep.diagonal_sum == 0.0
    assert rep.offdiagonal_sum == 0.0 or rep.offdiagonal_sum < 1e-15


def test_representability_n5():
    rep = check_representability(build_geometry(5))
    assert rep.max_deviation <= 1e-12
    assert rep.ok


def test_representability_n30():
    assert check_representability(build_geometry(30)).max_deviation <= 1e-11


def test_representability_large_n_uses_relaxed_tolerance():
    rep = check_representability(build_geometry(80))
    assert rep.tolerance == 1e-11
    assert rep.ok


def test_momentum_reduction_brute_force():
    # Apply Bᵀ to random relative momenta and compare p_N, p_{N-1} with the
    # two-particle variables (P, p) built from π_N and π_{N-1}.
    rng = np.random.default_rng(0)
    for N in (3, 4, 10):
        geom = build_geometry(N)
        pi = rng.standard_normal((N, 3))
        pi[0] = 0.0  # centre-of-mass momentum removed
        p_all = geom.B.T @ pi
        P = 0.5 * (geom.beta * pi[N - 1] + geom.alpha * pi[N - 2])
        p = 0.5 * (geom.alpha * pi[N - 1] - geom.beta * pi[N - 2])
        np.testing.assert_allclose(p_all[N - 1], -(p + geom.delta * P), atol=1e-13)
        np.testing.assert_allclose(p_all[N - 2], p - geom.delta * P, atol=1e-13)


@pytest.mark.parametrize("N", [2, 3, 6, 25])
def test_symmetric_covariance_is_diagonal_in_relative_momenta(N):
    # Any permutation-symmetric covariance ⟨p_k·p_l⟩ = s δ_kl + t (1 - δ_kl)
    # maps to ⟨π_i·π_j⟩ = δ_ij (s - t) for i, j > 1.
    s, t = 1.7, -0.3
    cov = t * np.ones((N, N)) + (s - t) * np.eye(N)
    B = build_geometry(N).B
    rel = (B @ cov @ B.T)[1:, 1:]
    np.testing.assert_allclose(rel, (s - t) * np.eye(N - 1), atol=1e-12)


def test_domain():
    with pytest.raises(DomainError):
        build_geometry(1)
