"""Closed-form exterior Riemann maps.

``forward`` maps the exterior of E onto ``|w| > 1`` with ``forward(inf) = inf``
and positive derivative at infinity; ``inverse`` is its inverse with Laurent
expansion ``capacity * w + c0 + O(1/w)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainContainsOrigin, UnsupportedDomain
from .geometry import Disk, DiskCut, Ellipse, Lens, LensAngles


@dataclass(frozen=True)
class ExteriorMap:
    domain: object
    forward: Callable
    inverse: Callable
    capacity: float
    phase: float = 0.0  # rotation applied after the un-normalized lens map
    center: complex = 0j  # constant Laurent coefficient of the inverse

    def __call__(self, z):
        return self.forward(z)


def _disk_map(E: Disk) -> ExteriorMap:
    c, r = E.center, E.radius
    return ExteriorMap(E, lambda z: (np.asarray(z) - c) / r, lambda w: c + r * np.asarray(w), r, center=c)


def _ellipse_map(E: Ellipse) -> ExteriorMap:
    z0, rot = E.center, E.rotation
    cap = 0.5 * (E.semi_major + E.semi_minor)
    d = 0.5 * (E.semi_major - E.semi_minor)
    e_rot = cmath.exp(1j * rot)

    def forward(z):
        zeta = np.asarray(z, dtype=complex)
        zeta = np.conj(e_rot) * (zeta - z0)
        root = np.sqrt(zeta * zeta - 4.0 * cap * d)
        w1 = (zeta + root) / (2.0 * cap)
        w2 = (zeta - root) / (2.0 * cap)
        w = np.where(np.abs(w1) >= np.abs(w2), w1, w2)
        return e_rot * w

    def inverse(w):
        w = np.conj(e_rot) * np.asarray(w, dtype=complex)
        return z0 + e_rot * (cap * w + d / w)

    return ExteriorMap(E, forward, inverse, cap, center=z0)


def _lens_parts(ang: LensAngles):
    k = math.pi / (2.0 * math.pi - ang.theta1 + ang.theta0)
    tau = 0.5 * (ang.theta1 + ang.theta0)
    alpha = k * tau
    return k, tau, alpha


def _lens_map(E: Lens) -> ExteriorMap:
    ang = E.angles
    a = ang.a
    ab = a.conjugate()
    k, tau, alpha = _lens_parts(ang)
    p = cmath.exp(-1j * alpha)  # image of infinity after the power map
    # phase making the derivative at infinity real positive
    mu = 0.5 * math.pi - alpha
    e_mu = cmath.exp(1j * mu)
    e_tau = cmath.exp(1j * tau)
    capacity = k * a.imag / math.cos(alpha)

    def forward(z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            sector = (z - a) / (z - ab) / e_tau
            half = np.exp(k * np.log(sector))
            out = e_mu * (p.conjugate() + half) / (p - half)
        # the lower tip is a pole of the sector map; its limit value is -e^{i mu}
        return np.where(z == ab, -e_mu, out)

    def inverse(w):
        u = np.asarray(w, dtype=complex) / e_mu
        half = (u * p - p.conjugate()) / (1.0 + u)
        t = np.exp(np.log(half) / k) * e_tau
        return (a - t * ab) / (1.0 - t)

    c0 = _lens_center(inverse)
    return ExteriorMap(E, forward, inverse, capacity, phase=mu, center=c0)


def _lens_center(inverse) -> complex:
    # constant Laurent term: mean of the inverse over |w| = 2 (trapezoid rule, spectrally exact)
    w = 2.0 * np.exp(2j * np.pi * np.arange(256) / 256)
    return complex(np.mean(inverse(w)))


def _diskcut_map(E: DiskCut) -> ExteriorMap:
    base = E.base
    if not isinstance(base, Disk):
        raise UnsupportedDomain("exterior map available only for disk cuts of a disk")
    shift = E.cut_center
    dist = abs(base.center - shift)
    rot = cmath.exp(1j * cmath.phase(base.center - shift))
    canon = Lens(0.0, E.cut_radius, dist, base.radius)
    inner = _lens_map(canon)

    def forward(z):
        return rot * inner.forward((np.asarray(z, dtype=complex) - shift) / rot)

    def inverse(w):
        return shift + rot * inner.inverse(np.asarray(w, dtype=complex) / rot)

    return ExteriorMap(E, forward, inverse, inner.capacity, phase=inner.phase,
                       center=shift + rot * inner.center)


def build_map(E) -> ExteriorMap:
    """Exterior conformal map of a disk, ellipse, lens, or disk cut of a disk."""
    if isinstance(E, Disk):
        return _disk_map(E)
    if isinstance(E, Ellipse):
        return _ellipse_map(E)
    if isinstance(E, Lens):
        return _lens_map(E)
    if isinstance(E, DiskCut):
        return _diskcut_map(E)
    raise UnsupportedDomain(f"no closed-form exterior map for {type(E).__name__}")


def has_map(E) -> bool:
    return isinstance(E, (Disk, Ellipse, Lens)) or (isinstance(E, DiskCut) and isinstance(E.base, Disk))


def gamma(emap: ExteriorMap) -> float:
    """gamma = 1/|Phi(0)|, the asymptotic convergence factor relative to 0."""
    if bool(np.any(emap.domain.contains(0.0))):
        raise DomainContainsOrigin("0 lies in E")
    phi0 = abs(complex(emap.forward(0.0)))
    if not phi0 > 1.0:
        raise DomainContainsOrigin(f"|Phi(0)| = {phi0} <= 1")
    return 1.0 / phi0


def lens_gamma_closed_form(angles: LensAngles) -> float:
    denom = 2.0 * math.pi - angles.theta1 + angles.theta0
    return math.sin(math.pi * angles.arg_a / denom) / math.sin(
        math.pi * (math.pi + angles.theta0 - angles.arg_a) / denom
    )


def elman_gamma(beta: float) -> float:
    """Limit of the lens convergence factor for a half-plane cut; beta in (0, pi/2]."""
    return 2.0 * math.sin(0.5 * math.pi * beta / (2.0 * math.pi - beta))
