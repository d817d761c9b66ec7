"""Seeded test matrices and admissible (matrix, domain) configurations."""
from __future__ import annotations

import math

import numpy as np

from .errors import ConfigurationError
from .geometry import Disk, Ellipse, Lens
from .spectral import numerical_radius, spectral_norm, support_values

FAMILIES = ("random-dense", "normal-random", "jordan", "grcar-like")


def _unitary(rng, N):
    Z = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_dense(N, rng):
    return (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / math.sqrt(2 * N)


def normal_random(N, rng):
    """Q diag(lam) Q* with eigenvalues uniform in the unit disk."""
    lam = np.sqrt(rng.uniform(0, 1, N)) * np.exp(2j * np.pi * rng.uniform(0, 1, N))
    Q = _unitary(rng, N)
    return (Q * lam) @ Q.conj().T


def jordan(N, rng=None, eigenvalue=0.0):
    return eigenvalue * np.eye(N, dtype=complex) + np.diag(np.ones(N - 1, dtype=complex), 1)


def grcar_like(N, rng=None, k=3):
    A = np.diag(-np.ones(N - 1), -1) + np.eye(N)
    for j in range(1, k + 1):
        A += np.diag(np.ones(N - j), j)
    return A.astype(complex)


def make_matrix(family: str, N: int, seed: int, shift: complex = 0.0, scale: float = 1.0):
    rng = np.random.default_rng(seed)
    builders = {"random-dense": random_dense, "normal-random": normal_random,
                "jordan": jordan, "grcar-like": grcar_like}
    if family not in builders:
        raise ConfigurationError(f"unknown matrix family {family!r}; choose from {FAMILIES}")
    if N < 1:
        raise ConfigurationError("matrix size must be positive")
    return shift * np.eye(N) + scale * builders[family](N, rng)


def enclosing_disk(A, margin: float = 1e-3, n_angles: int = 720) -> Disk:
    """Disk about the centroid of W(A) containing W(A), inflated by ``margin`` (relative)."""
    c = complex(np.trace(A) / A.shape[0])
    r = numerical_radius(A - c * np.eye(A.shape[0]), n_angles)
    return Disk(c, max(r, 1e-12) * (1.0 + margin))


def enclosing_ellipse(A, ratio: float, rotation: float = 0.0, margin: float = 1e-3,
                      n_angles: int = 720) -> Ellipse:
    """Ellipse of axis ratio ``ratio`` <= 1 about the centroid of W(A) containing W(A)."""
    c = complex(np.trace(A) / A.shape[0])
    theta = 2.0 * np.pi * np.arange(n_angles) / n_angles
    h = support_values(A - c * np.eye(A.shape[0]), theta)
    unit = Ellipse(0.0, 1.0, ratio, rotation)
    # grid sampling misses the support maximum by O((2 pi/n_angles)**2)
    t = float(np.max(h / unit.support(theta))) * (1.0 + margin + 20.0 / n_angles**2)
    return Ellipse(c, t, t * ratio, rotation)


def lens_configuration(seed: int, case: str = "b", N: int | None = None, normal: bool | None = None,
                       margin: float = 1e-2, max_tries: int = 200):
    """Random matrix A and a lens E satisfying the cut condition for ``case``.

    A = c1 + R X with X scaled to numerical radius 1, so W(A) lies in the disk
    about c1. The cut radius is ``(1 - margin)`` times the largest admissible
    value: ``1/||(A-c0)^{-1}||`` for case "a", ``1/w((A-c0)^{-1})`` for case "b".
    """
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        n = N or int(rng.integers(4, 13))
        is_normal = bool(rng.integers(0, 2)) if normal is None else normal
        X = normal_random(n, rng) if is_normal else random_dense(n, rng) + 0.6 * np.triu(random_dense(n, rng), 1)
        X = X / numerical_radius(X)
        R = rng.uniform(0.5, 2.0)
        c1 = R * rng.uniform(1.05, 1.6)
        A = c1 * np.eye(n) + R * X
        r1 = numerical_radius(A - c1 * np.eye(n)) * (1.0 + margin)
        c0 = (c1 - r1) - R * rng.uniform(0.05, 1.5)
        B = np.linalg.inv(A - c0 * np.eye(n))
        limit = spectral_norm(B) if case == "a" else numerical_radius(B)
        r0 = (1.0 - margin) / limit
        try:
            E = Lens(c0, r0, c1, r1)
        except ConfigurationError:
            continue
        if E.angles.theta0 < 0.05:
            continue
        return A, E
    raise ConfigurationError(f"no admissible lens configuration found for seed {seed}")
