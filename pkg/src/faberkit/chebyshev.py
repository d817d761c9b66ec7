"""Constrained Chebyshev problem: min ||p||_E over deg p <= n, p(0) = 1.

Solved on boundary samples by Lawson's iteratively reweighted least squares.
Every iterate gives a certified lower bound (the weighted least-squares
minimum) and an upper bound (the max modulus of the iterate), so the stopping
rule certifies the relative gap to the sampled optimum.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .conformal import ExteriorMap, gamma
from .errors import ConvergenceError, DomainContainsOrigin
from .faber import faber_coeffs, faber_eval_scalar, laurent_of_psi
from .geometry import boundary_samples, v_of


@dataclass(frozen=True)
class ChebyshevResult:
    delta: float  # best max |p| found on the samples
    lower: float  # certified lower bound for the sampled optimum
    coeffs: np.ndarray  # ascending monomial coefficients, coeffs[0] == 1
    iterations: int
    source: str  # "lawson" or "faber"


def _basis(z, center, scale, n):
    t = (z - center) / scale
    t0 = -center / scale
    return np.stack([t**k - t0**k for k in range(1, n + 1)], axis=1)


def constrained_chebyshev(E, emap: ExteriorMap | None, n: int, n_samples: int | None = None,
                          max_iter: int = 20000, rtol: float = 0.01) -> ChebyshevResult:
    """Approximate delta(n, E) on boundary samples.

    The constraint p(0) = 1 is eliminated by writing
    ``p(z) = 1 + sum_k a_k (t**k - t(0)**k)`` with ``t = (z - center)/scale``.
    When a map is given, F_n/F_n(0) is also tried and the better of the two is
    returned.
    """
    if bool(np.any(E.contains(0.0))):
        raise DomainContainsOrigin("0 lies in E")
    if n == 0:
        return ChebyshevResult(1.0, 1.0, np.ones(1, dtype=complex), 0, "lawson")
    m = max(4 * (n + 8), n_samples or 2048)
    z = boundary_samples(E, m)
    center = complex(np.mean(z))
    scale = float(np.max(np.abs(z - center)))
    V = _basis(z, center, scale, n)
    w = np.full(len(z), 1.0 / len(z))
    best_up, best_a, lower = np.inf, None, 0.0
    it = 0
    for it in range(1, max_iter + 1):
        sw = np.sqrt(w)
        a, *_ = np.linalg.lstsq(sw[:, None] * V, -sw.astype(complex), rcond=None)
        err = np.abs(1.0 + V @ a)
        lower = max(lower, float(np.sqrt(np.sum(w * err**2))))
        up = float(err.max())
        if up < best_up:
            best_up, best_a = up, a
        if best_up - lower <= rtol * best_up:
            break
        w = w * err
        w /= w.sum()
    else:
        raise ConvergenceError(f"Lawson iteration did not reach rtol={rtol} in {max_iter} steps "
                               f"(gap {best_up - lower:.3e})")
    # back to monomials in z
    local = np.concatenate([[1.0 - np.sum(best_a * (-center / scale) ** np.arange(1, n + 1))], best_a])
    coeffs = _to_monomial(local, center, scale)
    result = ChebyshevResult(best_up, lower, coeffs, it, "lawson")
    if emap is not None:
        F = faber_coeffs(laurent_of_psi(emap), n)
        vals = faber_eval_scalar(F, z) / faber_eval_scalar(F, 0.0)
        fab = float(np.max(np.abs(vals)))
        if fab < result.delta:
            result = ChebyshevResult(fab, lower, F.coeffs / faber_eval_scalar(F, 0.0), it, "faber")
    return result


def _to_monomial(local, center, scale):
    shift = np.array([-center / scale, 1.0 / scale], dtype=complex)
    out = np.zeros(1, dtype=complex)
    for b in local[::-1]:
        out = P.polyadd(P.polymul(out, shift), [b])
    return np.asarray(out, dtype=complex)


@dataclass(frozen=True)
class SandwichCheck:
    n: int
    gamma_n: float
    delta: float
    upper: float | None
    applicable: bool
    holds: bool


def sandwich_check(E, emap: ExteriorMap, n: int, tol: float = 1e-6, **kwargs) -> SandwichCheck:
    """``gamma**n <= delta(n, E) <= gamma**n (1 + v)/(1 - gamma**(n+1) v)``."""
    g = gamma(emap)
    v = v_of(E)
    res = constrained_chebyshev(E, emap, n, **kwargs)
    gn = g**n
    applicable = g ** (n + 1) * v < 1.0
    if not applicable:
        return SandwichCheck(n, gn, res.delta, None, False, gn <= res.delta + tol)
    upper = gn * (1.0 + v) / (1.0 - g ** (n + 1) * v)
    return SandwichCheck(n, gn, res.delta, upper, True, gn <= res.delta + tol and res.delta <= upper + tol)
