"""Faber polynomials: construction from the Laurent series of the inverse map,
scalar and matrix evaluation, and the boundary-integral representation.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.linalg import solve_triangular

from .conformal import ExteriorMap, gamma
from .errors import ConvergenceError, DimensionMismatch, IllConditioned, SpectrumTooClose
from .geometry import BoundaryQuadrature, boundary_distance, boundary_samples, diameter, v_of


@dataclass(frozen=True)
class LaurentSeries:
    """Truncated expansion ``c*w + c0 + sum_k tail[k-1] * w**-k`` of the inverse map."""

    c: float
    c0: complex
    tail: np.ndarray
    rho: float
    est_tail_error: float

    @property
    def K(self) -> int:
        return len(self.tail)


def laurent_of_psi(emap: ExteriorMap, K: int = 128, n_fft: int = 1024, rho: float = 1.05) -> LaurentSeries:
    """Laurent coefficients of the inverse map by FFT on the circle ``|w| = rho``.

    Coefficient ``k`` is recovered by multiplying by ``rho**k``, which also
    amplifies FFT roundoff by ``rho**k``; keep ``rho**K`` well below 1e6.
    """
    if n_fft & (n_fft - 1) or n_fft < 4 * K:
        raise ValueError("n_fft must be a power of two and at least 4*K")
    if not 1.0 < rho <= 2.0:
        raise ValueError("rho must lie in (1, 2]")
    w = rho * np.exp(2j * np.pi * np.arange(n_fft) / n_fft)
    coef = np.fft.fft(emap.inverse(w)) / n_fft
    c = coef[1] / rho
    c0 = coef[0]
    k = np.arange(1, K + 1)
    tail = coef[n_fft - k] * rho**k
    if abs(c.imag) > 1e-8 * abs(c):
        raise ConvergenceError(f"leading Laurent coefficient is not real positive: {c}")
    c = float(c.real)
    if abs(tail[-1]) > 1e-2 * c:
        raise ConvergenceError(
            f"Laurent coefficients do not decay: |c_K| = {abs(tail[-1]):.3e} with K={K}, rho={rho}"
        )
    est = abs(tail[-1]) / rho / (1.0 - 1.0 / rho)
    return LaurentSeries(c=c, c0=complex(c0), tail=tail, rho=rho, est_tail_error=float(est))


@dataclass(frozen=True)
class FaberPolynomial:
    """F_n stored in the scaled variable ``t = (z - center)/scale`` and in monomials of z."""

    degree: int
    local: np.ndarray  # ascending coefficients in t
    center: complex
    scale: float
    domain: str = ""

    @property
    def coeffs(self) -> np.ndarray:
        """Ascending monomial coefficients in z."""
        shift = np.array([-self.center / self.scale, 1.0 / self.scale], dtype=complex)
        out = np.zeros(1, dtype=complex)
        for b in self.local[::-1]:
            out = P.polyadd(P.polymul(out, shift), [b])
        out = np.asarray(out, dtype=complex)
        if len(out) < self.degree + 1:
            out = np.concatenate([out, np.zeros(self.degree + 1 - len(out), dtype=complex)])
        lead = out[self.degree]
        if not np.isfinite(out).all() or lead == 0:
            raise IllConditioned(f"monomial coefficients of F_{self.degree} over/underflow")
        return out


def faber_coeffs(series: LaurentSeries, n: int, domain: str = "") -> FaberPolynomial:
    """F_n: the degree-n polynomial with ``F_n(Psi(w)) = w**n + O(1/w)``.

    Powers of the normalized series ``s(w) = (Psi(w) - c0)/c`` are formed by
    truncated series multiplication; the coefficients of F_n in ``t`` solve the
    unit upper-triangular system matching the nonnegative powers of
    ``sum_j b_j s(w)**j`` to ``w**n``.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > series.K // 2:
        raise ValueError(f"degree {n} exceeds K/2 = {series.K // 2}")
    if n == 0:
        return FaberPolynomial(0, np.ones(1, dtype=complex), series.c0, series.c, domain)
    # s as an array over powers -n..1 (index = power + n)
    s = np.zeros(n + 2, dtype=complex)
    s[n + 1] = 1.0
    s[:n][::-1] = series.tail[:n] / series.c
    M = np.zeros((n + 1, n + 1), dtype=complex)
    power = np.zeros(2 * n + 1, dtype=complex)  # s**m over powers -n..n
    power[n] = 1.0
    M[0, 0] = 1.0
    for m in range(1, n + 1):
        full = np.convolve(power, s)  # powers -2n..n+1
        power = full[n:3 * n + 1]
        M[:, m] = power[n:2 * n + 1]
    rhs = np.zeros(n + 1, dtype=complex)
    rhs[n] = 1.0
    b = solve_triangular(M, rhs, lower=False, unit_diagonal=True)
    return FaberPolynomial(n, b, series.c0, series.c, domain)


def faber_family(series: LaurentSeries, n_max: int, domain: str = ""):
    return [faber_coeffs(series, n, domain) for n in range(n_max + 1)]


def faber_eval_scalar(F: FaberPolynomial, z):
    """Horner evaluation of F_n at scalar or array z."""
    t = (np.asarray(z, dtype=complex) - F.center) / F.scale
    out = np.full(t.shape, F.local[-1], dtype=complex)
    for b in F.local[-2::-1]:
        out = out * t + b
    return out if out.ndim else complex(out)


def faber_eval_matrix(F: FaberPolynomial, A) -> np.ndarray:
    """F_n(A) by Horner's scheme with matrix products."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    N = A.shape[0]
    eye = np.eye(N, dtype=complex)
    T = (A - F.center * eye) / F.scale
    out = F.local[-1] * eye
    for b in F.local[-2::-1]:
        out = out @ T + b * eye
    return out


def check_spectrum_inside(E, A, rel_margin: float = 1e-3):
    """Raise SpectrumTooClose unless every eigenvalue of A is interior to E,
    at distance at least ``rel_margin * diam(E)`` from the boundary."""
    lam = np.linalg.eigvals(np.asarray(A, dtype=complex))
    inside = np.asarray(E.contains(lam))
    dist = boundary_distance(E, lam)
    thresh = rel_margin * diameter(E)
    if not inside.all() or dist.min() < thresh:
        raise SpectrumTooClose(
            f"eigenvalues must lie inside E at distance >= {thresh:.3g} from the boundary "
            f"(min distance {dist.min():.3g}, all inside: {bool(inside.all())})"
        )
    return lam


def faber_matrix_contour(E, emap: ExteriorMap, n: int, A, quad: BoundaryQuadrature, check: bool = True):
    """Quadrature of ``int_0^L Phi(sigma(s))**n mu(s, A) ds``.

    Equals F_n(A) for n >= 1; for n = 0 the integral is 2I.
    """
    from .spectral import mu_matrices

    A = np.asarray(A, dtype=complex)
    if check:
        check_spectrum_inside(E, A)
    mu = mu_matrices(A, quad)
    weights = quad.weights * emap.forward(quad.sigma) ** n
    return np.einsum("j,jkl->kl", weights, mu)


def faber_sup_norm(E, emap: ExteriorMap, n: int, n_samples: int = 2048, F: FaberPolynomial | None = None,
                   series: LaurentSeries | None = None) -> float:
    """max |F_n| over boundary samples (the maximum principle makes the boundary sufficient)."""
    if n_samples < 512:
        raise ValueError("n_samples must be >= 512")
    if F is None:
        F = faber_coeffs(series if series is not None else laurent_of_psi(emap), n)
    pts = boundary_samples(E, n_samples)
    return float(np.max(np.abs(faber_eval_scalar(F, pts))))


def faber_minus_phi_power(E, emap: ExteriorMap, F: FaberPolynomial, n_samples: int = 2048) -> float:
    """max over boundary samples of |F_n - Phi**n|."""
    pts = boundary_samples(E, n_samples)
    return float(np.max(np.abs(faber_eval_scalar(F, pts) - emap.forward(pts) ** F.degree)))


@dataclass(frozen=True)
class ZeroBoundCheck:
    n: int
    lhs: float
    rhs: float | None
    applicable: bool
    holds: bool


def faber_zero_bound_check(E, emap: ExteriorMap, series: LaurentSeries, n: int, tol: float = 1e-8) -> ZeroBoundCheck:
    """Compare ``1/|F_n(0)|`` with ``gamma**n / (1 - gamma**(n+1) v(E))``."""
    g = gamma(emap)
    v = v_of(E)
    F = faber_coeffs(series, n)
    lhs = 1.0 / abs(faber_eval_scalar(F, 0.0))
    applicable = g ** (n + 1) * v < 1.0
    if not applicable:
        return ZeroBoundCheck(n, lhs, None, False, True)
    rhs = g**n / (1.0 - g ** (n + 1) * v)
    return ZeroBoundCheck(n, lhs, rhs, True, lhs <= rhs + tol)


def write_coeffs_csv(path, coeffs) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "real", "imag"])
        for k, c in enumerate(coeffs):
            writer.writerow([k, repr(float(c.real)), repr(float(c.imag))])

