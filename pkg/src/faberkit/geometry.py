"""Domain families, boundary parametrizations and the non-convexity constant v(E).

Supported sets E:

* convex bases: :class:`Disk`, :class:`Ellipse`, :class:`HullPolygon`
  (each of these is also a valid convex domain on its own);
* :class:`DiskCut`: a convex base with the open disk ``|z - c| < r`` removed,
  where the cut circle crosses the base boundary exactly twice;
* :class:`Lens`: ``{|z - c1| <= r1, |z - c0| >= r0}`` with real centres.

Boundaries are oriented counter-clockwise. Each boundary is a closed chain of
smooth pieces (circular arcs, ellipse arcs, segments); piece endpoints are the
corners.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

import numpy as np
from scipy.optimize import brentq
from scipy.special import ellipeinc

from .errors import ConfigurationError

TWO_PI = 2.0 * math.pi


def parse_complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigurationError(f"complex must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        try:
            return complex(value.replace(" ", "").replace("i", "j"))
        except ValueError as exc:
            raise ConfigurationError(f"cannot parse complex {value!r}") from exc
    if isinstance(value, (int, float, complex)):
        return complex(value)
    raise ConfigurationError(f"cannot parse complex {value!r}")


def _complex_out(z: complex):
    return [float(z.real), float(z.imag)]


# ---------------------------------------------------------------------------
# boundary pieces


@dataclass(frozen=True)
class Arc:
    """Circular arc ``center + radius * exp(i t)`` for t from ``start`` to ``stop``."""

    center: complex
    radius: float
    start: float
    stop: float

    def point(self, u):
        return self.center + self.radius * np.exp(1j * (self.start + np.asarray(u) * (self.stop - self.start)))

    def velocity(self, u):
        d = self.stop - self.start
        return 1j * d * self.radius * np.exp(1j * (self.start + np.asarray(u) * d))

    @property
    def length(self) -> float:
        return self.radius * abs(self.stop - self.start)

    def arclength(self, u):
        return self.length * np.asarray(u, dtype=float)


@dataclass(frozen=True)
class EllipseArc:
    """Arc of ``center + e^{i rot} (a cos t + i b sin t)``, t from ``start`` to ``stop``."""

    center: complex
    a: float
    b: float
    rotation: float
    start: float
    stop: float

    def _t(self, u):
        return self.start + np.asarray(u, dtype=float) * (self.stop - self.start)

    def point(self, u):
        t = self._t(u)
        return self.center + np.exp(1j * self.rotation) * (self.a * np.cos(t) + 1j * self.b * np.sin(t))

    def velocity(self, u):
        t = self._t(u)
        d = self.stop - self.start
        return d * np.exp(1j * self.rotation) * (-self.a * np.sin(t) + 1j * self.b * np.cos(t))

    def _s(self, t):
        m = 1.0 - (self.b / self.a) ** 2
        return self.a * (ellipeinc(t + math.pi / 2, m) - ellipeinc(math.pi / 2, m))

    def arclength(self, u):
        return np.abs(self._s(self._t(u)) - self._s(self.start))

    @property
    def length(self) -> float:
        return float(self.arclength(1.0))


@dataclass(frozen=True)
class Segment:
    z0: complex
    z1: complex

    def point(self, u):
        return self.z0 + np.asarray(u) * (self.z1 - self.z0)

    def velocity(self, u):
        return np.full(np.shape(u), self.z1 - self.z0, dtype=complex)

    @property
    def length(self) -> float:
        return abs(self.z1 - self.z0)

    def arclength(self, u):
        return self.length * np.asarray(u, dtype=float)


Piece = Union[Arc, EllipseArc, Segment]


# ---------------------------------------------------------------------------
# convex bases


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not self.radius > 0:
            raise ConfigurationError(f"disk radius must be positive, got {self.radius}")

    def contains(self, z):
        return np.abs(np.asarray(z) - self.center) <= self.radius

    def level(self, z):
        return np.abs(np.asarray(z) - self.center) - self.radius

    def support(self, theta):
        return np.real(np.exp(-1j * np.asarray(theta)) * self.center) + self.radius

    def boundary_pieces(self):
        return (Arc(self.center, self.radius, 0.0, TWO_PI),)

    def to_dict(self):
        return {"type": "disk", "center": _complex_out(self.center), "radius": self.radius}


@dataclass(frozen=True)
class Ellipse:
    center: complex
    semi_major: float
    semi_minor: float
    rotation: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not (self.semi_major >= self.semi_minor > 0):
            raise ConfigurationError(
                f"need semi_major >= semi_minor > 0, got {self.semi_major}, {self.semi_minor}"
            )

    def _local(self, z):
        return np.exp(-1j * self.rotation) * (np.asarray(z) - self.center)

    def contains(self, z):
        return self.level(z) <= 0

    def level(self, z):
        w = self._local(z)
        return np.hypot(w.real / self.semi_major, w.imag / self.semi_minor) - 1.0

    def support(self, theta):
        t = np.asarray(theta) - self.rotation
        return np.real(np.exp(-1j * np.asarray(theta)) * self.center) + np.hypot(
            self.semi_major * np.cos(t), self.semi_minor * np.sin(t)
        )

    def parameter_of(self, z) -> float:
        w = self._local(z)
        return math.atan2(w.imag / self.semi_minor, w.real / self.semi_major)

    def boundary_pieces(self):
        return (EllipseArc(self.center, self.semi_major, self.semi_minor, self.rotation, 0.0, TWO_PI),)

    def to_dict(self):
        return {
            "type": "ellipse",
            "center": _complex_out(self.center),
            "semi_major": self.semi_major,
            "semi_minor": self.semi_minor,
            "rotation": self.rotation,
        }


@dataclass(frozen=True)
class HullPolygon:
    """Strictly convex polygon with counter-clockwise vertices."""

    vertices: tuple

    def __post_init__(self):
        v = tuple(complex(z) for z in self.vertices)
        object.__setattr__(self, "vertices", v)
        if len(v) < 3:
            raise ConfigurationError("polygon needs at least 3 vertices")
        arr = np.array(v)
        edges = np.roll(arr, -1) - arr
        cross = np.imag(np.conj(edges) * np.roll(edges, -1))
        if np.any(cross <= 0):
            raise ConfigurationError("polygon vertices must be strictly convex and counter-clockwise")
        turning = np.angle(np.roll(edges, -1) / edges).sum()
        if abs(turning - TWO_PI) > 1e-9:
            raise ConfigurationError("polygon boundary is not simple")

    @cached_property
    def _arr(self):
        return np.array(self.vertices)

    def _edge_distances(self, z):
        z = np.asarray(z, dtype=complex)
        v0 = self._arr
        e = np.roll(v0, -1) - v0
        outward = -1j * e / np.abs(e)
        # signed distance of z to each edge line, positive outside
        return np.real(np.conj(outward)[:, None] * (z.reshape(1, -1) - v0[:, None])).reshape((len(v0),) + z.shape)

    def level(self, z):
        return self._edge_distances(z).max(axis=0)

    def contains(self, z):
        return self.level(z) <= 0

    def support(self, theta):
        t = np.asarray(theta)
        return np.real(np.exp(-1j * t)[..., None] * self._arr).max(axis=-1)

    def boundary_pieces(self):
        v = self.vertices
        return tuple(Segment(v[i], v[(i + 1) % len(v)]) for i in range(len(v)))

    def locate(self, z):
        """Return (edge index, fraction along edge) of the boundary point nearest z."""
        v0 = self._arr
        e = np.roll(v0, -1) - v0
        t = np.clip(np.real(np.conj(e) * (z - v0)) / np.abs(e) ** 2, 0.0, 1.0)
        d = np.abs(v0 + t * e - z)
        i = int(np.argmin(d))
        return i, float(t[i])

    def to_dict(self):
        return {"type": "polygon", "vertices": [_complex_out(z) for z in self.vertices]}


ConvexBase = Union[Disk, Ellipse, HullPolygon]
CONVEX_TYPES = (Disk, Ellipse, HullPolygon)


# ---------------------------------------------------------------------------
# non-convex domains


@dataclass(frozen=True)
class LensAngles:
    a: complex
    theta0: float
    theta1: float
    arg_a: float


@dataclass(frozen=True)
class Lens:
    """``{z : |z - c1| <= r1, |z - c0| >= r0}`` with real centres c0 < c1."""

    c0: float
    r0: float
    c1: float
    r1: float

    def __post_init__(self):
        for name in ("c0", "r0", "c1", "r1"):
            object.__setattr__(self, name, float(getattr(self, name)))
        c0, r0, c1, r1 = self.c0, self.r0, self.c1, self.r1
        if not (r0 > 0 and r1 > 0):
            raise ConfigurationError("lens radii must be positive")
        if not (c0 - r0 < c1 - r1 < c0 + r0 < c1 + r1 and 0 < c0 + r0):
            raise ConfigurationError(
                "lens needs c0-r0 < c1-r1 < c0+r0 < c1+r1 and 0 < c0+r0, got "
                f"c0={c0}, r0={r0}, c1={c1}, r1={r1}"
            )

    @cached_property
    def angles(self) -> LensAngles:
        c0, r0, c1, r1 = self.c0, self.r0, self.c1, self.r1
        d = c1 - c0
        # signed offset of the radical line from c1; the half-chord height is
        # taken on the smaller circle to avoid cancellation when r0 >> r1
        x1 = ((r0 - d) * (r0 + d) - r1 * r1) / (2.0 * d)
        x = d + x1
        y2 = (r1 - x1) * (r1 + x1) if r1 <= r0 else (r0 - x) * (r0 + x)
        if not y2 > 0:
            raise ConfigurationError("lens circles do not intersect transversally")
        y = math.sqrt(y2)
        a = complex(c0 + x, y)
        return LensAngles(a=a, theta0=math.atan2(y, x), theta1=math.atan2(y, x1),
                          arg_a=math.atan2(y, c0 + x))

    @property
    def base(self) -> Disk:
        return Disk(self.c1, self.r1)

    @property
    def cut_center(self) -> complex:
        return complex(self.c0)

    @property
    def cut_radius(self) -> float:
        return self.r0

    @property
    def opening(self) -> float:
        return 2.0 * self.angles.theta0

    def contains(self, z):
        z = np.asarray(z)
        return (np.abs(z - self.c1) <= self.r1) & (np.abs(z - self.c0) >= self.r0)

    def boundary_pieces(self):
        ang = self.angles
        return (
            Arc(complex(self.c1), self.r1, -ang.theta1, ang.theta1),
            Arc(complex(self.c0), self.r0, ang.theta0, -ang.theta0),
        )

    def to_dict(self):
        return {"type": "lens", "c0": self.c0, "r0": self.r0, "c1": self.c1, "r1": self.r1}


@dataclass(frozen=True)
class CutOpening:
    omega: float
    endpoints: tuple  # (entry point, exit point) on the cut circle, counter-clockwise
    psi_entry: float


def _find_cut(base, center: complex, radius: float, n_grid: int = 4096) -> CutOpening:
    psi = np.linspace(-math.pi, math.pi, n_grid, endpoint=False)
    g = base.level(center + radius * np.exp(1j * psi))
    neg = g <= 0
    changes = np.nonzero(neg != np.roll(neg, -1))[0]
    if len(changes) != 2:
        raise ConfigurationError(
            f"cut circle must cross the base boundary exactly twice, found {len(changes)} crossings"
        )

    def f(t):
        return float(base.level(center + radius * np.exp(1j * t)))

    roots = {}
    for j in changes:
        lo, hi = psi[j], psi[j] + TWO_PI / n_grid
        f_lo, f_hi = f(lo), f(hi)
        if f_lo * f_hi < 0:
            root = brentq(f, lo, hi, xtol=1e-15, rtol=1e-15)
        else:  # crossing sits on a grid node
            root = lo if abs(f_lo) <= abs(f_hi) else hi
        roots["entry" if not neg[j] else "exit"] = root
    entry, exit_ = roots["entry"], roots["exit"]
    omega = (exit_ - entry) % TWO_PI
    p_in = center + radius * np.exp(1j * entry)
    p_out = center + radius * np.exp(1j * exit_)
    return CutOpening(omega=float(omega), endpoints=(complex(p_in), complex(p_out)), psi_entry=float(entry))


@dataclass(frozen=True)
class DiskCut:
    """Convex base minus the open disk ``|z - cut_center| < cut_radius``."""

    base: ConvexBase
    cut_center: complex
    cut_radius: float
    _opening: CutOpening = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.base, CONVEX_TYPES):
            raise ConfigurationError("DiskCut base must be a Disk, Ellipse or HullPolygon")
        object.__setattr__(self, "cut_center", complex(self.cut_center))
        if not self.cut_radius > 0:
            raise ConfigurationError("cut radius must be positive")
        object.__setattr__(self, "_opening", _find_cut(self.base, self.cut_center, self.cut_radius))

    @property
    def opening(self) -> float:
        return self._opening.omega

    def contains(self, z):
        z = np.asarray(z)
        return self.base.contains(z) & (np.abs(z - self.cut_center) >= self.cut_radius)

    def _base_pieces(self, pa: complex, pb: complex):
        base = self.base
        if isinstance(base, Disk):
            ta = math.atan2((pa - base.center).imag, (pa - base.center).real)
            tb = math.atan2((pb - base.center).imag, (pb - base.center).real)
            return [Arc(base.center, base.radius, ta, ta + (tb - ta) % TWO_PI)]
        if isinstance(base, Ellipse):
            ta, tb = base.parameter_of(pa), base.parameter_of(pb)
            return [EllipseArc(base.center, base.semi_major, base.semi_minor, base.rotation,
                               ta, ta + (tb - ta) % TWO_PI)]
        v = base.vertices
        m = len(v)
        ia, fa = base.locate(pa)
        ib, fb = base.locate(pb)
        if ia == ib and fb > fa:
            return [Segment(pa, pb)]
        pieces = [Segment(pa, v[(ia + 1) % m])]
        i = (ia + 1) % m
        while i != ib:
            pieces.append(Segment(v[i], v[(i + 1) % m]))
            i = (i + 1) % m
        pieces.append(Segment(v[ib], pb))
        return [p for p in pieces if p.length > 1e-14]

    def boundary_pieces(self):
        op = self._opening
        pa, pb = op.endpoints
        pieces = self._base_pieces(pa, pb)
        pieces.append(Arc(self.cut_center, self.cut_radius, op.psi_entry + op.omega, op.psi_entry))
        return tuple(pieces)

    def to_dict(self):
        return {
            "type": "diskcut",
            "base": self.base.to_dict(),
            "cut_center": _complex_out(self.cut_center),
            "cut_radius": self.cut_radius,
        }


Domain = Union[Disk, Ellipse, HullPolygon, DiskCut, Lens]


def is_convex(E) -> bool:
    return isinstance(E, CONVEX_TYPES)


def lens_angles(E: Lens) -> LensAngles:
    """Upper intersection point ``a`` of the two lens circles and its angles."""
    return E.angles


def disk_cut_opening(E: DiskCut):
    """Opening angle of the circular cut and the two arc endpoints."""
    if isinstance(E, Lens):
        a = E.angles.a
        return E.opening, (a.conjugate(), a)
    return E.opening, E._opening.endpoints


def v_of(E) -> float:
    """Closed-form value of v(E): 1 for convex sets, 1 + omega/pi for a single circular cut."""
    if is_convex(E):
        return 1.0
    if isinstance(E, Lens):
        return 1.0 + 2.0 * E.angles.theta0 / math.pi
    if isinstance(E, DiskCut):
        return 1.0 + E.opening / math.pi
    raise ConfigurationError(f"unknown domain {E!r}")


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True)
class BoundaryQuadrature:
    """Arc-length quadrature on the counter-clockwise boundary of E."""

    s: np.ndarray
    sigma: np.ndarray
    nu: np.ndarray
    weights: np.ndarray
    length: float
    piece: np.ndarray
    corners: tuple

    def __len__(self):
        return len(self.s)

    @property
    def tangent(self):
        return 1j * self.nu


def _graded_gauss(n_panels: int, order: int, q: int = 3):
    """Composite Gauss-Legendre on [0, 1] after a sigmoidal change of variables.

    The change of variables clusters nodes at both endpoints so that corner
    singularities are integrated to high order.
    """
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, 1.0, n_panels + 1)
    h = np.diff(edges)
    xs = (edges[:-1, None] + 0.5 * h[:, None] * (x[None, :] + 1.0)).ravel()
    ws = (0.5 * h[:, None] * w[None, :]).ravel()
    a, b = xs**q, (1.0 - xs) ** q
    u = a / (a + b)
    du = q * xs ** (q - 1) * (1.0 - xs) ** (q - 1) / (a + b) ** 2
    return u, ws * du


def boundary_quadrature(E, n_nodes: int = 1024, order: int = 16) -> BoundaryQuadrature:
    """Nodes, outer normals and arc-length weights on the boundary of E.

    Smooth closed curves (disk, ellipse) use the periodic trapezoidal rule in
    the angle parameter. Piecewise smooth boundaries use graded composite
    Gauss-Legendre on every piece, so corners are panel ends and never nodes.
    """
    if n_nodes < 64:
        raise ConfigurationError("boundary quadrature needs n_nodes >= 64")
    pieces = E.boundary_pieces()
    if isinstance(E, (Disk, Ellipse)):
        piece = pieces[0]
        u = np.arange(n_nodes) / n_nodes
        vel = piece.velocity(u)
        speed = np.abs(vel)
        return BoundaryQuadrature(
            s=np.asarray(piece.arclength(u), dtype=float),
            sigma=piece.point(u),
            nu=-1j * vel / speed,
            weights=speed / n_nodes,
            length=piece.length,
            piece=np.zeros(n_nodes, dtype=int),
            corners=(),
        )

    lengths = np.array([p.length for p in pieces])
    total = lengths.sum()
    s_list, z_list, nu_list, w_list, idx_list = [], [], [], [], []
    offset = 0.0
    for k, (p, ell) in enumerate(zip(pieces, lengths)):
        n_panels = max(2, int(round(n_nodes * ell / (total * order))))
        u, wu = _graded_gauss(n_panels, order)
        vel = p.velocity(u)
        speed = np.abs(vel)
        s_list.append(offset + np.asarray(p.arclength(u), dtype=float))
        z_list.append(p.point(u))
        nu_list.append(-1j * vel / speed)
        w_list.append(speed * wu)
        idx_list.append(np.full(len(u), k))
        offset += ell
    return BoundaryQuadrature(
        s=np.concatenate(s_list),
        sigma=np.concatenate(z_list),
        nu=np.concatenate(nu_list),
        weights=np.concatenate(w_list),
        length=float(total),
        piece=np.concatenate(idx_list),
        corners=tuple(complex(p.point(0.0)) for p in pieces),
    )


def boundary_samples(E, n: int) -> np.ndarray:
    """Roughly arc-length-uniform boundary points including every corner."""
    pieces = E.boundary_pieces()
    if isinstance(E, (Disk, Ellipse)):
        return pieces[0].point(np.arange(n) / n)
    lengths = np.array([p.length for p in pieces])
    out = []
    for p, ell in zip(pieces, lengths):
        m = max(2, int(round(n * ell / lengths.sum())))
        out.append(p.point(np.arange(m) / m))
    return np.concatenate(out)


def boundary_distance(E, z, n_samples: int = 8192):
    """Approximate distance from points z to the boundary of E."""
    pts = boundary_samples(E, n_samples)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    return np.min(np.abs(z[:, None] - pts[None, :]), axis=1)


def diameter(E, n_samples: int = 512) -> float:
    pts = boundary_samples(E, n_samples)
    return float(np.max(np.abs(pts[:, None] - pts[None, :])))


def v_numeric(E, n_nodes: int = 2048, n_probe: int = 64) -> float:
    """Direct discretization of v(E) as a cross-check of :func:`v_of`.

    For each probe z on the boundary the total variation of arg(sigma - z)
    along the boundary is integrated with the boundary quadrature, skipping
    the nodes within L/(2 n_nodes) of z; the maximum over probes is returned.
    """
    if n_probe < 32:
        raise ConfigurationError("v_numeric needs n_probe >= 32")
    quad = boundary_quadrature(E, n_nodes)
    pieces = E.boundary_pieces()
    lengths = np.array([p.length for p in pieces])
    L = quad.length
    probes, probe_s = [], []
    offset = 0.0
    for p, ell in zip(pieces, lengths):
        m = max(1, int(round(n_probe * ell / L)))
        u = 0.02 + 0.96 * (np.arange(m) + 0.5) / m
        probes.append(p.point(u))
        probe_s.append(offset + np.asarray(p.arclength(u), dtype=float))
        offset += ell
    probes = np.concatenate(probes)
    probe_s = np.concatenate(probe_s)
    T = quad.tangent
    half_gap = 0.5 * L / n_nodes
    best = 0.0
    for z, sz in zip(probes, probe_s):
        ds = np.abs(quad.s - sz)
        ds = np.minimum(ds, L - ds)
        keep = ds > half_gap
        integrand = np.abs(np.imag(T[keep] / (quad.sigma[keep] - z)))
        best = max(best, float(np.sum(quad.weights[keep] * integrand)) / math.pi)
    return best


# ---------------------------------------------------------------------------
# JSON


def domain_from_dict(spec: dict):
    if not isinstance(spec, dict) or "type" not in spec:
        raise ConfigurationError(f"domain spec must be an object with a 'type' key, got {spec!r}")
    kind = str(spec["type"]).lower()
    try:
        if kind == "disk":
            return Disk(parse_complex(spec["center"]), float(spec["radius"]))
        if kind == "ellipse":
            return Ellipse(parse_complex(spec["center"]), float(spec["semi_major"]),
                           float(spec["semi_minor"]), float(spec.get("rotation", 0.0)))
        if kind in ("polygon", "hullpolygon"):
            return HullPolygon(tuple(parse_complex(v) for v in spec["vertices"]))
        if kind in ("diskcut", "disk_cut", "disk-cut"):
            return DiskCut(domain_from_dict(spec["base"]), parse_complex(spec["cut_center"]),
                           float(spec["cut_radius"]))
        if kind == "lens":
            return Lens(float(spec["c0"]), float(spec["r0"]), float(spec["c1"]), float(spec["r1"]))
    except KeyError as exc:
        raise ConfigurationError(f"domain spec {kind!r} is missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(f"bad domain spec: {exc}") from exc
    raise ConfigurationError(f"unknown domain type {kind!r}")


def domain_to_dict(E) -> dict:
    return E.to_dict()
