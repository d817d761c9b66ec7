"""Numerical range, norms, resolvents and the Hermitian boundary density mu(s, A)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ConfigurationError, DimensionMismatch, EigSolverFailure, SingularResolvent
from .geometry import BoundaryQuadrature


def _square(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    return A


def hermitian_part(A, theta: float = 0.0) -> np.ndarray:
    """Hermitian part of ``exp(-i theta) A``."""
    B = np.exp(-1j * theta) * A
    return 0.5 * (B + B.conj().T)


def _rotated_hermitian_parts(A, theta):
    B = np.exp(-1j * np.asarray(theta))[:, None, None] * A[None]
    return 0.5 * (B + np.conj(np.swapaxes(B, 1, 2)))


@dataclass(frozen=True)
class NumericalRangeHull:
    boundary_points: np.ndarray
    support_angles: np.ndarray
    numerical_radius: float


def numerical_range(A, n_angles: int = 360) -> NumericalRangeHull:
    """Inner polygonal approximation of W(A) from support points.

    For each angle the top eigenvector u of the Hermitian part of
    ``exp(-i theta) A`` gives the boundary point ``u* A u``.
    """
    if n_angles < 90:
        raise ConfigurationError("n_angles must be >= 90")
    A = _square(A)
    theta = 2.0 * np.pi * np.arange(n_angles) / n_angles
    try:
        _, vecs = np.linalg.eigh(_rotated_hermitian_parts(A, theta))
    except np.linalg.LinAlgError as exc:
        raise EigSolverFailure(str(exc)) from exc
    u = vecs[:, :, -1]
    pts = np.einsum("ki,ij,kj->k", u.conj(), A, u)
    # drop consecutive duplicates (corners of W(A) are hit by many angles)
    scale = max(1.0, float(np.max(np.abs(pts))))
    keep = np.abs(pts - np.roll(pts, 1)) > 1e-12 * scale
    if not keep.any():
        keep[0] = True
    pts, angles = pts[keep], theta[keep]
    return NumericalRangeHull(pts, angles, float(np.max(np.abs(pts))))


def support_values(A, theta) -> np.ndarray:
    """``max Re(exp(-i theta) z)`` over z in W(A), for each angle."""
    A = _square(A)
    return np.linalg.eigvalsh(_rotated_hermitian_parts(A, np.atleast_1d(theta)))[:, -1]


def numerical_radius(A, n_angles: int = 360, refine: bool = True) -> float:
    """max |z| over W(A), grid search over angles followed by a bounded 1-D refinement."""
    A = _square(A)
    theta = 2.0 * np.pi * np.arange(n_angles) / n_angles
    vals = support_values(A, theta)
    k = int(np.argmax(vals))
    best = float(vals[k])
    if refine:
        h = 2.0 * np.pi / n_angles
        res = minimize_scalar(lambda t: -float(support_values(A, t)[0]),
                              bounds=(theta[k] - h, theta[k] + h), method="bounded",
                              options={"xatol": 1e-12})
        best = max(best, -float(res.fun))
    return best


def range_in_convex(A, base, n_angles: int = 720, margin: float | None = None) -> bool:
    """Support-function test for ``W(A) subset base`` on an angle grid."""
    A = _square(A)
    if margin is None:
        margin = 1e-6 * max(1.0, spectral_norm(A))
    theta = 2.0 * np.pi * np.arange(n_angles) / n_angles
    return bool(np.all(support_values(A, theta) <= base.support(theta) + margin))


def spectral_norm(A) -> float:
    """Largest singular value."""
    return float(np.linalg.norm(_square(A), 2))


def batched_resolvent(A, sigma, chunk: int = 256) -> np.ndarray:
    """Stack of resolvents ``(sigma_j I - A)^{-1}``, one LU solve per node."""
    A = _square(A)
    sigma = np.atleast_1d(np.asarray(sigma, dtype=complex))
    N = A.shape[0]
    eye = np.eye(N, dtype=complex)
    out = np.empty((len(sigma), N, N), dtype=complex)
    for start in range(0, len(sigma), chunk):
        sl = slice(start, start + chunk)
        M = sigma[sl, None, None] * eye - A
        try:
            out[sl] = np.linalg.solve(M, np.broadcast_to(eye, M.shape))
        except np.linalg.LinAlgError as exc:
            raise SingularResolvent("sigma I - A is singular at a boundary node") from exc
    if not np.isfinite(out).all():
        raise SingularResolvent("resolvent overflow at a boundary node")
    return out


def mu_matrices(A, quad: BoundaryQuadrature) -> np.ndarray:
    """mu(s_j, A) at every quadrature node, shape (n_nodes, N, N)."""
    R = quad.nu[:, None, None] * batched_resolvent(A, quad.sigma)
    return (R + np.conj(np.swapaxes(R, 1, 2))) / (2.0 * math.pi)


@dataclass(frozen=True)
class MuSample:
    s: float
    mu: np.ndarray
    alpha: float

    @property
    def alpha_minus(self) -> float:
        return max(0.0, -self.alpha)


def mu_at(s: float, A, sigma: complex, nu: complex) -> MuSample:
    """``mu = (nu R + (nu R)*)/(2 pi)`` with ``R = (sigma I - A)^{-1}``, and its smallest eigenvalue."""
    R = nu * batched_resolvent(A, [sigma])[0]
    mu = (R + R.conj().T) / (2.0 * math.pi)
    alpha = float(np.linalg.eigvalsh(mu)[0])
    return MuSample(float(s), mu, alpha)


def mu_total_integral(A, quad: BoundaryQuadrature) -> np.ndarray:
    """Quadrature of ``int mu(s, A) ds``; equals 2I when the spectrum lies inside E."""
    return np.einsum("j,jkl->kl", quad.weights, mu_matrices(A, quad))


def mu_identity_deviation(A, quad: BoundaryQuadrature) -> float:
    total = mu_total_integral(A, quad)
    return spectral_norm(total - 2.0 * np.eye(total.shape[0]))


def alpha_values(A, quad: BoundaryQuadrature) -> np.ndarray:
    """Smallest eigenvalue of mu(s_j, A) at every node."""
    return np.linalg.eigvalsh(mu_matrices(A, quad))[:, 0]


def alpha_minus_integral(A, quad: BoundaryQuadrature) -> float:
    """Quadrature of the negative part of the smallest eigenvalue of mu(s, A)."""
    alpha = alpha_values(A, quad)
    return float(np.sum(quad.weights * np.maximum(0.0, -alpha)))
