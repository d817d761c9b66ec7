import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from faberkit.errors import ConfigurationError, DimensionMismatch, SingularResolvent
from faberkit.generators import enclosing_disk, enclosing_ellipse, make_matrix, normal_random, random_dense
from faberkit.geometry import Disk, DiskCut, Ellipse, Lens, boundary_quadrature
from faberkit.spectral import (alpha_minus_integral, alpha_values, batched_resolvent, mu_at, mu_identity_deviation,
                               mu_matrices, mu_total_integral, numerical_radius, numerical_range, range_in_convex,
                               spectral_norm)
from oracles import matrix_with_spectrum, numerical_radius_sampling, points_inside, svd_norm

seeds = st.integers(0, 2**31 - 1)


def _cross(p):
    a, b, c = p, np.roll(p, -1), np.roll(p, -2)
    return np.imag(np.conj(b - a) * (c - b))


def test_normal_triangle():
    A = np.diag([1.0, 1j, -1.0])
    h = numerical_range(A, 360)
    for v in (1.0, 1j, -1.0):
        assert np.min(np.abs(h.boundary_points - v)) < 1e-8
    assert len(h.boundary_points) == 3
    assert h.numerical_radius == pytest.approx(1.0, abs=1e-12)


def test_jordan_block_radius():
    A = np.array([[0, 1], [0, 0]], dtype=complex)
    assert numerical_range(A, 720).numerical_radius == pytest.approx(0.5, abs=1e-6)
    assert numerical_radius(A, 720) == pytest.approx(numerical_radius_sampling(A), abs=1e-6)


def test_hermitian_is_segment(rng):
    X = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    H = X + X.conj().T
    pts = numerical_range(H, 360).boundary_points
    lam = np.linalg.eigvalsh(H)
    assert np.max(np.abs(pts.imag)) < 1e-8
    assert pts.real.min() == pytest.approx(lam[0], abs=1e-8)
    assert pts.real.max() == pytest.approx(lam[-1], abs=1e-8)


def test_too_few_angles():
    with pytest.raises(ConfigurationError):
        numerical_range(np.eye(2), 45)


@given(seeds)
def test_numerical_range_is_convex_and_contains_spectrum(seed):
    rng = np.random.default_rng(seed)
    A = random_dense(int(rng.integers(2, 9)), rng)
    h = numerical_range(A, 360)
    p = h.boundary_points
    if len(p) >= 3:
        assert np.all(_cross(p) >= -1e-10 * max(1.0, spectral_norm(A)) ** 2)
    assert h.numerical_radius == pytest.approx(np.max(np.abs(p)), abs=1e-10)
    # every eigenvalue satisfies all sampled support inequalities
    lam = np.linalg.eigvals(A)
    theta = h.support_angles
    for z in lam:
        assert np.all(np.real(np.exp(-1j * theta) * z) <= np.real(np.exp(-1j * theta) * p) + 1e-8 * spectral_norm(A))


@given(seeds)
def test_numerical_radius_matches_sampling(seed):
    rng = np.random.default_rng(seed)
    A = random_dense(4, rng)
    w = numerical_radius(A)
    assert w == pytest.approx(numerical_radius_sampling(A, n_starts=20, seed=seed), rel=1e-6)
    assert spectral_norm(A) / 2 - 1e-12 <= w <= spectral_norm(A) + 1e-12


def test_spectral_norm_examples(rng):
    assert spectral_norm(np.diag([3.0, -1.0])) == pytest.approx(3.0)
    Q, _ = np.linalg.qr(rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)))
    assert spectral_norm(Q) == pytest.approx(1.0, abs=1e-10)
    X = rng.standard_normal((10, 10))
    assert spectral_norm(X) == pytest.approx(svd_norm(X), abs=1e-8)
    with pytest.raises(DimensionMismatch):
        spectral_norm(np.ones((2, 3)))


def test_singular_resolvent():
    with pytest.raises(SingularResolvent):
        batched_resolvent(np.diag([1.0, 2.0]), [1.0])


def test_scalar_mu():
    lam = 0.3 + 0.2j
    E = Disk(0.0, 1.0)
    q = boundary_quadrature(E, 128)
    mu = mu_matrices(np.array([[lam]]), q)[:, 0, 0]
    assert np.allclose(mu.imag, 0, atol=1e-15)
    assert np.allclose(mu.real, np.real(q.nu / (q.sigma - lam)) / math.pi)
    assert np.all(mu.real > 0)
    assert mu_total_integral(np.array([[lam]]), q)[0, 0] == pytest.approx(2.0, abs=1e-8)


def test_mu_sample_invariants(rng):
    A = random_dense(5, rng) * 0.3
    s = mu_at(0.7, A, 1.0 + 0.2j, np.exp(0.4j))
    assert np.allclose(s.mu, s.mu.conj().T, atol=1e-12 * np.linalg.norm(s.mu))
    assert s.alpha_minus >= 0 and s.alpha_minus * s.alpha <= 0


def test_normal_in_halfplane_has_no_negative_part(rng):
    A = 0.5 * normal_random(6, rng)
    q = boundary_quadrature(Disk(0.0, 1.0), 256)
    assert np.all(alpha_values(A, q) >= -1e-12)
    assert alpha_minus_integral(A, q) <= 1e-10


@pytest.mark.parametrize("make_domain", [
    lambda A: enclosing_disk(A, 0.05),
    lambda A: enclosing_ellipse(A, 0.6, 0.4, 0.05),
], ids=["disk", "ellipse"])
def test_mu_identity_convex(make_domain, rng):
    A = random_dense(6, rng)
    E = make_domain(A)
    assert mu_identity_deviation(A, boundary_quadrature(E, 512)) <= 1e-8
    assert alpha_minus_integral(A, boundary_quadrature(E, 512)) <= 1e-10


@pytest.mark.parametrize("E", [Lens(0.5, 1.0, 3.0, 2.0), DiskCut(Ellipse(0.0, 2.0, 1.0, 0.2), -1.8 + 0.2j, 0.8)],
                         ids=["lens", "diskcut-ellipse"])
def test_mu_identity_nonconvex(E, rng):
    A = matrix_with_spectrum(points_inside(E, 6, rng), rng, cond=3.0)
    assert mu_identity_deviation(A, boundary_quadrature(E, 1024)) <= 1e-8


def _cut_nodes(r, n=64):
    theta = np.linspace(-math.pi, math.pi, n, endpoint=False)
    return r * np.exp(1j * theta), -np.exp(1j * theta)


@given(seeds, st.floats(0.3, 3.0))
def test_case_a_algebra(seed, r):
    # ||r A^{-1}|| <= 1 makes 2 pi r mu + I positive semidefinite on |z| = r
    rng = np.random.default_rng(seed)
    X = random_dense(5, rng)
    Ainv = X / spectral_norm(X) / r
    A = np.linalg.inv(Ainv)
    for sigma, nu in zip(*_cut_nodes(r)):
        s = mu_at(0.0, A, sigma, nu)
        assert np.linalg.eigvalsh(2 * math.pi * r * s.mu + np.eye(5))[0] >= -1e-10


@given(seeds, st.floats(0.3, 3.0))
def test_case_b_algebra(seed, r):
    # w(r A^{-1}) <= 1 makes 2 pi r mu + 2I positive semidefinite on |z| = r
    rng = np.random.default_rng(seed)
    X = random_dense(5, rng)
    Ainv = X / numerical_radius(X) / r
    A = np.linalg.inv(Ainv)
    for sigma, nu in zip(*_cut_nodes(r)):
        s = mu_at(0.0, A, sigma, nu)
        assert np.linalg.eigvalsh(2 * math.pi * r * s.mu + 2 * np.eye(5))[0] >= -1e-10


def test_range_in_convex():
    A = make_matrix("jordan", 2, 0)
    assert range_in_convex(A, Disk(0.0, 0.5 + 1e-6))
    assert not range_in_convex(A, Disk(0.0, 0.49))
