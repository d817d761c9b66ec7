import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.polynomial import polynomial as P

from faberkit.conformal import build_map, gamma
from faberkit.errors import ConvergenceError, DimensionMismatch, SpectrumTooClose
from faberkit.faber import (faber_coeffs, faber_eval_matrix, faber_eval_scalar, faber_matrix_contour,
                            faber_minus_phi_power, faber_sup_norm, faber_zero_bound_check, laurent_of_psi,
                            write_coeffs_csv)
from faberkit.geometry import Disk, DiskCut, Ellipse, Lens, boundary_quadrature, v_of
from faberkit.spectral import spectral_norm
from oracles import chebyshev_faber_ellipse, matrix_with_spectrum, points_inside

DISK = Disk(3.0, 2.0)
ELLIPSE = Ellipse(0.0, 2.0, 1.0, 0.0)
LENS = Lens(0.5, 1.0, 3.0, 2.0)
MAPPED = [DISK, ELLIPSE, Ellipse(1 + 1j, 1.5, 0.4, 0.7), LENS, DiskCut(Disk(0.0, 2.0), -2.0, 1.0)]
ids = ["disk", "ellipse", "ellipse-rot", "lens", "diskcut"]


def _series(E):
    return laurent_of_psi(build_map(E))


def test_disk_series():
    s = _series(DISK)
    assert s.c == pytest.approx(2.0, abs=1e-12)
    assert s.c0 == pytest.approx(3.0, abs=1e-12)
    assert np.max(np.abs(s.tail)) <= 1e-12


def test_ellipse_series_is_joukowski():
    s = _series(ELLIPSE)
    assert s.c == pytest.approx(1.5, abs=1e-12)
    assert s.tail[0] == pytest.approx(0.5, abs=1e-12)
    assert np.max(np.abs(s.tail[1:])) <= 1e-12


def test_lens_series_decays():
    # the corners put singularities of Psi on |w| = 1, so decay is algebraic
    s = laurent_of_psi(build_map(LENS), K=64, rho=1.25)
    mags = np.abs(s.tail)
    k = np.arange(1, len(mags) + 1)
    envelope = np.maximum.accumulate(mags[::-1])[::-1]
    slope = np.polyfit(np.log(k[4:]), np.log(envelope[4:]), 1)[0]
    assert slope < -1.0
    assert mags[-1] < 1e-3 * mags[0]


def test_series_stable_under_fft_doubling():
    em = build_map(LENS)
    a = laurent_of_psi(em, K=64, n_fft=1024)
    b = laurent_of_psi(em, K=64, n_fft=2048)
    assert np.max(np.abs(a.tail - b.tail)) <= 1e-10 * a.c
    assert abs(a.c0 - b.c0) <= 1e-10 * a.c


def test_series_rejects_bad_truncation():
    with pytest.raises(ConvergenceError):
        laurent_of_psi(build_map(Lens(0.5, 1.0, 3.0, 2.0)), K=4, n_fft=16, rho=1.01)


@pytest.mark.parametrize("n", range(0, 11))
def test_disk_coefficients_exact(n):
    F = faber_coeffs(_series(DISK), n)
    expected = P.polypow([-1.5, 0.5], n)
    assert np.max(np.abs(F.coeffs - expected)) <= 1e-12


@pytest.mark.parametrize("n", range(0, 13))
def test_ellipse_coefficients_match_chebyshev(n):
    F = faber_coeffs(_series(ELLIPSE), n)
    ref = chebyshev_faber_ellipse(2.0, 1.0, n)
    assert np.max(np.abs(F.coeffs - ref)) <= 1e-8 * np.max(np.abs(ref))


@pytest.mark.parametrize("E", MAPPED, ids=ids)
def test_degree_and_leading_coefficient(E):
    s = _series(E)
    for n in range(0, 16):
        F = faber_coeffs(s, n)
        assert len(F.coeffs) == n + 1 and F.degree == n
        assert abs(F.coeffs[-1] - s.c ** (-n)) <= 1e-8 * s.c ** (-n)


@pytest.mark.parametrize("E", MAPPED, ids=ids)
def test_defining_property_at_large_w(E):
    em = build_map(E)
    s = laurent_of_psi(em)
    w = 1e3 * np.exp(1j * np.array([0.3, 1.7, 4.0]))
    for n in (1, 4, 8):
        F = faber_coeffs(s, n)
        err = np.abs(faber_eval_scalar(F, em.inverse(w)) - w**n)
        # O(1/w) remainder plus roundoff on the w**n scale
        assert np.all(err <= 1e-6 * 1e3 ** (n - 1) * s.K + 2 * n / 1e3)


def test_scalar_values():
    F3 = faber_coeffs(_series(DISK), 3)
    assert faber_eval_scalar(F3, 5.0) == pytest.approx(1.0, abs=1e-13)
    F0 = faber_coeffs(_series(LENS), 0)
    assert faber_eval_scalar(F0, 2.7 - 1j) == 1.0


def test_matrix_evaluation_basics(rng):
    F = faber_coeffs(_series(LENS), 5)
    lam = np.array([2.0, 3.0 + 0.5j, 4.0 - 1j])
    assert np.allclose(faber_eval_matrix(F, np.diag(lam)), np.diag(faber_eval_scalar(F, lam)), atol=1e-12)
    A = rng.standard_normal((4, 4)) * 0.2
    F3 = faber_coeffs(_series(Disk(0.0, 1.0)), 3)
    assert np.allclose(faber_eval_matrix(F3, A), A @ A @ A, atol=1e-14)
    assert np.allclose(faber_eval_matrix(faber_coeffs(_series(DISK), 0), A), np.eye(4))
    with pytest.raises(DimensionMismatch):
        faber_eval_matrix(F, np.ones((2, 3)))


def test_contour_small_example():
    E = Disk(0.0, 2.0)
    A = np.diag([1.0, -1.0]).astype(complex)
    F = faber_matrix_contour(E, build_map(E), 2, A, boundary_quadrature(E, 256))
    assert np.allclose(F, np.eye(2) / 4, atol=1e-12)


@pytest.mark.parametrize("E", MAPPED, ids=ids)
def test_dual_path_equivalence(E, rng):
    em = build_map(E)
    s = laurent_of_psi(em)
    quad = boundary_quadrature(E, 1024)
    for _ in range(4):
        A = matrix_with_spectrum(points_inside(E, 6, rng), rng)
        # the representation holds for n >= 1; at n = 0 the integral is 2I
        for n in (1, 3, 7, 10):
            H = faber_eval_matrix(faber_coeffs(s, n), A)
            K = faber_matrix_contour(E, em, n, A, quad)
            assert spectral_norm(H - K) <= 1e-6 * max(1.0, spectral_norm(H))


def test_contour_converges_under_node_doubling(rng):
    em = build_map(LENS)
    A = matrix_with_spectrum(points_inside(LENS, 5, rng), rng)
    a = faber_matrix_contour(LENS, em, 6, A, boundary_quadrature(LENS, 1024))
    b = faber_matrix_contour(LENS, em, 6, A, boundary_quadrature(LENS, 2048))
    assert spectral_norm(a - b) <= 1e-8


def test_contour_rejects_spectrum_on_boundary():
    A = np.diag([3.0 + 2.0, 3.0]).astype(complex)
    with pytest.raises(SpectrumTooClose):
        faber_matrix_contour(DISK, build_map(DISK), 2, A, boundary_quadrature(DISK, 256))


@pytest.mark.parametrize("E", MAPPED, ids=ids)
def test_lemma1_sup_norm_and_phi_power(E):
    em = build_map(E)
    s = laurent_of_psi(em)
    v = v_of(E)
    for n in range(1, 13):
        F = faber_coeffs(s, n)
        assert faber_sup_norm(E, em, n, 2048, F=F) <= 1 + v + 1e-6
        assert faber_minus_phi_power(E, em, F, 2048) <= v + 5e-3


def test_disk_sup_norm_is_one():
    em = build_map(DISK)
    for n in (1, 5, 9):
        assert faber_sup_norm(DISK, em, n, 1024) == pytest.approx(1.0, abs=1e-10)


def test_zero_bound_disk():
    em = build_map(DISK)
    r = faber_zero_bound_check(DISK, em, _series(DISK), 2)
    assert r.lhs == pytest.approx((2 / 3) ** 2)
    assert r.rhs == pytest.approx((2 / 3) ** 2 / (1 - (2 / 3) ** 3))
    assert r.applicable and r.holds and r.lhs < r.rhs


@pytest.mark.parametrize("E", [LENS, Ellipse(3.0, 2.0, 1.0, 0.3), DiskCut(Disk(2 + 1j, 2.0), 0.2j, 1.2)],
                         ids=["lens", "ellipse", "tilted-cut"])
def test_zero_bound_where_applicable(E):
    em = build_map(E)
    s = _series(E)
    g, v = gamma(em), v_of(E)
    for n in range(1, 13):
        r = faber_zero_bound_check(E, em, s, n)
        assert r.applicable == (g ** (n + 1) * v < 1)
        assert r.holds


def test_zero_bound_not_applicable():
    # gamma close to 1 and a wide cut make gamma v >= 1
    E = DiskCut(Disk(0.5, 1.0), -0.5, 0.8)
    em = build_map(E)
    g, v = gamma(em), v_of(E)
    assert g * v >= 1
    r = faber_zero_bound_check(E, em, _series(E), 0)
    assert not r.applicable and r.rhs is None


@given(st.integers(0, 12), st.floats(-math.pi, math.pi))
def test_faber_of_psi_on_unit_circle(n, theta):
    # F_n(Psi(w)) - w^n is bounded by v(E) on |w| = 1
    em = build_map(LENS)
    s = laurent_of_psi(em)
    w = np.exp(1j * theta)
    assert abs(faber_eval_scalar(faber_coeffs(s, n), em.inverse(w)) - w**n) <= v_of(LENS) + 5e-3


def test_coeffs_csv(tmp_path):
    F = faber_coeffs(_series(DISK), 2)
    path = tmp_path / "f.csv"
    write_coeffs_csv(path, F.coeffs)
    lines = path.read_text().splitlines()
    assert lines[0] == "index,real,imag" and len(lines) == 4
