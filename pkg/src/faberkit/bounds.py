"""Checkable bound reports for ||F_n(A)|| and the GMRES convergence estimate.

Preconditions are recorded as named flags instead of raising, so parameter
sweeps can chart admissible regions. ``passed`` is true when every inequality
whose preconditions hold is satisfied within the tolerance.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .conformal import build_map, elman_gamma, gamma, has_map, lens_gamma_closed_form
from .errors import DomainContainsOrigin, SpectrumTooClose, UnsupportedDomain
from .faber import check_spectrum_inside, faber_coeffs, faber_eval_matrix, faber_eval_scalar, laurent_of_psi
from .geometry import Disk, DiskCut, Lens, boundary_quadrature, is_convex, v_of
from .spectral import alpha_minus_integral, numerical_radius, range_in_convex, spectral_norm

DEFAULT_TOL = 1e-6


@dataclass
class BoundReport:
    domain: dict
    n: int
    kind: str
    v: float
    gamma: float | None
    norm_FnA: float | None
    bound_lemma3: float | None
    bound_theorem: float | None
    bound_est6bis: float | None
    est6bis_middle: float | None
    preconditions: dict = field(default_factory=dict)
    passed: bool = True
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Est6bis:
    n: int
    norm_FnA: float
    F_n0: complex
    middle: float
    right: float | None
    applicable: bool
    gamma: float
    v: float


class _FaberCache:
    """Faber polynomials of one domain, built once per report batch."""

    def __init__(self, E):
        self.E = E
        self.emap = build_map(E)
        self.series = laurent_of_psi(self.emap)
        self._polys = {}

    def poly(self, n):
        if n not in self._polys:
            self._polys[n] = faber_coeffs(self.series, n, type(self.E).__name__)
        return self._polys[n]

    def gamma(self):
        try:
            return gamma(self.emap)
        except DomainContainsOrigin:
            return None


def lemma3_bound(A, E, quad=None, n_nodes: int = 1024) -> float:
    """``2 (1 + int alpha_-(s) ds)``, an n-independent bound on ||F_n(A)||."""
    check_spectrum_inside(E, A)
    if quad is None:
        quad = boundary_quadrature(E, n_nodes)
    return 2.0 * (1.0 + alpha_minus_integral(A, quad))


def est6bis_bound(A, E, n: int, cache: _FaberCache | None = None) -> Est6bis:
    """``||F_n(A)||/|F_n(0)|`` and ``gamma**n ||F_n(A)|| / (1 - gamma**(n+1) v(E))``.

    The right-hand form is only valid when ``gamma**(n+1) v(E) < 1``; otherwise
    ``applicable`` is False and ``right`` is None.
    """
    cache = cache or _FaberCache(E)
    g = gamma(cache.emap)
    v = v_of(E)
    F = cache.poly(n)
    norm = spectral_norm(faber_eval_matrix(F, A))
    f0 = complex(faber_eval_scalar(F, 0.0))
    middle = norm / abs(f0)
    applicable = g ** (n + 1) * v < 1.0
    right = g**n * norm / (1.0 - g ** (n + 1) * v) if applicable else None
    return Est6bis(n, norm, f0, middle, right, applicable, g, v)


def _cut_parts(E):
    if isinstance(E, Lens):
        return E.base, E.cut_center, E.cut_radius
    if isinstance(E, DiskCut):
        return E.base, E.cut_center, E.cut_radius
    raise UnsupportedDomain(f"{type(E).__name__} is not a disk-cut domain")


def _shifted_inverse(A, c):
    N = A.shape[0]
    try:
        return np.linalg.inv(A - c * np.eye(N))
    except np.linalg.LinAlgError:
        return None


def _lemma3_or_none(A, E, n_nodes):
    try:
        return lemma3_bound(A, E, n_nodes=n_nodes), True
    except SpectrumTooClose:
        return None, False


def _fill_norms(reports, A, E, cache, tol):
    """Add ||F_n(A)||, gamma and est6bis values, and check the unconditional inequalities."""
    for rep in reports:
        if cache is not None:
            F = cache.poly(rep.n)
            rep.norm_FnA = spectral_norm(faber_eval_matrix(F, A))
            rep.gamma = cache.gamma()
            if rep.gamma is not None:
                est = est6bis_bound(A, E, rep.n, cache)
                rep.est6bis_middle = est.middle
                rep.bound_est6bis = est.right
                if est.applicable and not est.middle <= est.right + tol:
                    rep.failures.append("est6bis_middle_le_right")
        if rep.bound_lemma3 is not None and rep.norm_FnA is not None:
            if not rep.norm_FnA <= rep.bound_lemma3 + tol:
                rep.failures.append("norm_le_lemma3")


def _finish(reports, tol):
    for rep in reports:
        admissible = all(rep.preconditions.values())
        if admissible and rep.bound_theorem is not None:
            if rep.norm_FnA is not None and not rep.norm_FnA <= rep.bound_theorem + tol:
                rep.failures.append("norm_le_theorem")
            if rep.bound_lemma3 is not None and not rep.bound_lemma3 <= rep.bound_theorem + tol:
                rep.failures.append("lemma3_le_theorem")
        rep.passed = not rep.failures
    return reports


def convex_check(A, E, n_list, n_nodes: int = 1024, tol: float = DEFAULT_TOL, with_lemma3: bool = False):
    """Reports for the convex case: ||F_n(A)|| <= 2 when W(A) lies in E."""
    A = np.asarray(A, dtype=complex)
    if not is_convex(E):
        raise UnsupportedDomain("convex_check needs a convex domain")
    flags = {"range_in_E": range_in_convex(A, E)}
    lemma3 = None
    if with_lemma3:
        lemma3, inside = _lemma3_or_none(A, E, n_nodes)
    cache = _FaberCache(E) if has_map(E) else None
    reports = [BoundReport(E.to_dict(), n, "convex", 1.0, None, None, lemma3, 2.0, None, None, dict(flags))
               for n in n_list]
    _fill_norms(reports, A, E, cache, tol)
    return _finish(reports, tol)


def theorem_check(A, E, case: str, n_list, n_nodes: int = 1024, tol: float = DEFAULT_TOL):
    """Reports for a single circular cut of a convex set.

    case "a": ``||(A - c)^{-1}|| <= 1/r`` gives ``||F_n(A)|| <= 1 + v(E)``;
    case "b": ``w((A - c)^{-1}) <= 1/r`` gives ``||F_n(A)|| <= 2 v(E)``.
    Domains without a closed-form map only get the n-independent bound from the boundary density.
    """
    if case not in ("a", "b"):
        raise ValueError("case must be 'a' or 'b'")
    A = np.asarray(A, dtype=complex)
    base, c, r = _cut_parts(E)
    v = v_of(E)
    flags = {"range_in_base": range_in_convex(A, base)}
    B = _shifted_inverse(A, c)
    flags["invertible"] = B is not None
    if B is None:
        flags["cut_condition"] = False
    elif case == "a":
        flags["cut_condition"] = spectral_norm(B) <= (1.0 / r) * (1.0 + 1e-12)
    else:
        flags["cut_condition"] = numerical_radius(B) <= (1.0 / r) * (1.0 + 1e-12)
    lemma3, _ = _lemma3_or_none(A, E, n_nodes)
    bound = 1.0 + v if case == "a" else 2.0 * v
    cache = _FaberCache(E) if has_map(E) else None
    reports = [BoundReport(E.to_dict(), n, f"theorem-{case}", v, None, None, lemma3, bound, None, None, dict(flags))
               for n in n_list]
    _fill_norms(reports, A, E, cache, tol)
    return _finish(reports, tol)


def corollary_bound(A, lens: Lens, n_list, n_nodes: int = 1024, tol: float = DEFAULT_TOL):
    """Lens reports: ``||F_n(A)|| <= 2 + 4 theta0/pi`` and the closed-form gamma."""
    A = np.asarray(A, dtype=complex)
    ang = lens.angles
    flags = {"range_in_disk": range_in_convex(A, Disk(lens.c1, lens.r1))}
    B = _shifted_inverse(A, lens.c0)
    flags["cut_condition"] = B is not None and numerical_radius(B) <= (1.0 / lens.r0) * (1.0 + 1e-12)
    bound = 2.0 + 4.0 * ang.theta0 / math.pi
    lemma3, _ = _lemma3_or_none(A, lens, n_nodes)
    cache = _FaberCache(lens)
    g_closed = lens_gamma_closed_form(ang)
    reports = [BoundReport(lens.to_dict(), n, "corollary", v_of(lens), g_closed, None, lemma3, bound, None, None,
                           dict(flags)) for n in n_list]
    _fill_norms(reports, A, lens, cache, tol)
    for rep in reports:
        if abs(rep.gamma - g_closed) > 1e-10:
            rep.failures.append("gamma_closed_form")
        rep.gamma = g_closed
    return _finish(reports, tol)


def elman_lens(beta: float, r1: float, c0: float) -> Lens:
    """Lens with c1 = 0 whose cut is the disk about c0 through Re z = cos(beta) r1."""
    alpha = math.cos(beta) * r1
    return Lens(c0, alpha - c0, 0.0, r1)


def elman_limit_check(beta: float, r1: float, c0_sequence) -> list:
    """``|gamma(lens(c0)) - elman_gamma(beta)|`` along a sequence c0 -> -inf."""
    if not 0 < beta < math.pi / 2:
        raise ValueError("beta must lie in (0, pi/2)")
    target = elman_gamma(beta)
    return [abs(gamma(build_map(elman_lens(beta, r1, c0))) - target) for c0 in c0_sequence]


def gmres_bounds(A, E, n_max: int, cache: _FaberCache | None = None):
    """Per-step est6bis values: the right-hand form where applicable, else the middle form."""
    cache = cache or _FaberCache(E)
    out = [1.0]
    for n in range(1, n_max + 1):
        est = est6bis_bound(A, E, n, cache)
        out.append(est.right if est.applicable else est.middle)
    return out
