"""Command-line front end.

Exit codes: 0 all asserted inequalities hold, 1 an inequality failed,
2 configuration error, 3 convergence failure.
"""
from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import bounds as bnd
from .config import RunConfig, load_config
from .conformal import build_map, elman_gamma, gamma, lens_gamma_closed_form
from .errors import (ConfigurationError, ConvergenceError, DimensionMismatch, DomainContainsOrigin,
                     EigSolverFailure, IllConditioned, SpectrumTooClose, UnsupportedDomain)
from .faber import faber_coeffs, laurent_of_psi, write_coeffs_csv
from .fileio import read_matrix, write_csv, write_json
from .generators import enclosing_disk, enclosing_ellipse, make_matrix
from .geometry import Lens, domain_from_dict, is_convex
from .krylov import gmres_run, write_trace_csv
from .spectral import numerical_range

log = logging.getLogger("faberkit")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_CONVERGENCE = 0, 1, 2, 3

_CONFIG_ERRORS = (ConfigurationError, UnsupportedDomain, DomainContainsOrigin, DimensionMismatch,
                  SpectrumTooClose)
_CONVERGENCE_ERRORS = (ConvergenceError, IllConditioned, EigSolverFailure)


def _setup_logging():
    level = os.environ.get("FABERKIT_LOG", "warn").lower()
    levels = {"error": logging.ERROR, "warn": logging.WARNING, "warning": logging.WARNING,
              "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _config(args) -> RunConfig:
    if not args.config:
        raise ConfigurationError("--config is required for this command")
    cfg = load_config(args.config, nodes=args.nodes, out=args.out)
    if args.nmax is not None:
        cfg = RunConfig(**{**cfg.__dict__, "n_range": (min(cfg.n_range[0], args.nmax), args.nmax)})
    if args.seed is not None:
        m = cfg.matrix
        cfg = RunConfig(**{**cfg.__dict__, "matrix": type(m)(**{**m.__dict__, "seed": args.seed})})
    return cfg


def _matrices(cfg: RunConfig):
    m = cfg.matrix
    if m.path:
        return [(None, read_matrix(m.path))]
    return [(m.seed + i, make_matrix(m.family, m.size, m.seed + i, m.shift, m.scale)) for i in range(m.count)]


def _domain_for(spec: dict, A):
    kind = str(spec.get("type", "")).lower()
    if kind == "enclosing-disk":
        return enclosing_disk(A, float(spec.get("margin", 1e-3)))
    if kind == "enclosing-ellipse":
        return enclosing_ellipse(A, float(spec.get("ratio", 0.5)), float(spec.get("rotation", 0.0)),
                                 float(spec.get("margin", 1e-3)))
    return domain_from_dict(spec)


def _out_dir(path) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_numrange(args) -> int:
    if args.matrix:
        A, out = read_matrix(args.matrix), _out_dir(args.out or "out")
    else:
        cfg = _config(args)
        A, out = _matrices(cfg)[0][1], _out_dir(cfg.out)
    hull = numerical_range(A, args.angles)
    pts = hull.boundary_points
    write_csv(out / "numrange.csv", ["index", "real", "imag"],
              [(k, float(z.real), float(z.imag)) for k, z in enumerate(pts)])
    write_json(out / "numrange.json", {"numerical_radius": hull.numerical_radius, "n_points": len(pts),
                                       "n_angles": args.angles})
    print(f"numerical radius {hull.numerical_radius:.12g} ({len(pts)} boundary points)")
    return EXIT_OK


def cmd_map_eval(args) -> int:
    cfg = _config(args)
    E = domain_from_dict(cfg.domain)
    emap = build_map(E)
    out = _out_dir(cfg.out)
    radius = args.radius
    theta = 2.0 * np.pi * np.arange(args.points) / args.points
    w = radius * np.exp(1j * theta)
    z = emap.inverse(w)
    back = emap(z)
    rows = [(float(a.real), float(a.imag), float(b.real), float(b.imag), float(abs(b)), float(abs(b - c)))
            for a, b, c in zip(z, back, w)]
    write_csv(out / "map_eval.csv", ["z_real", "z_imag", "phi_real", "phi_imag", "abs_phi", "roundtrip_error"], rows)
    write_json(out / "map.json", {"domain": E.to_dict(), "capacity": emap.capacity, "phase": emap.phase,
                                  "center": emap.center, "max_roundtrip_error": max(r[-1] for r in rows)})
    print(f"capacity {emap.capacity:.12g}; max |Phi(Psi(w)) - w| = {max(r[-1] for r in rows):.3e}")
    return EXIT_OK


def cmd_faber_coeffs(args) -> int:
    cfg = _config(args)
    E = domain_from_dict(cfg.domain)
    series = laurent_of_psi(build_map(E))
    out = _out_dir(cfg.out)
    n = cfg.n_range[1]
    F = faber_coeffs(series, n, type(E).__name__)
    write_coeffs_csv(out / f"faber_{n}.csv", F.coeffs)
    rows = [(1, series.c, 0.0), (0, series.c0.real, series.c0.imag)]
    rows += [(-(k + 1), c.real, c.imag) for k, c in enumerate(series.tail)]
    write_csv(out / "laurent.csv", ["power", "real", "imag"], [(p, float(a), float(b)) for p, a, b in rows])
    print(f"F_{n}: {len(F.coeffs)} monomial coefficients written; tail error estimate {series.est_tail_error:.2e}")
    return EXIT_OK


def _suite_for(cfg: RunConfig, E) -> str:
    if cfg.suite != "auto":
        return cfg.suite
    if is_convex(E):
        return "convex"
    return "corollary" if isinstance(E, Lens) else "theorem-b"


def cmd_bound_suite(args) -> int:
    cfg = _config(args)
    out = _out_dir(cfg.out)
    reports = []
    for seed, A in _matrices(cfg):
        E = _domain_for(cfg.domain, A)
        suite = _suite_for(cfg, E)
        log.info("seed %s: %s suite on %s", seed, suite, type(E).__name__)
        if suite == "convex":
            reps = bnd.convex_check(A, E, cfg.degrees, cfg.nodes, cfg.tolerance)
        elif suite == "corollary":
            if not isinstance(E, Lens):
                raise ConfigurationError("the corollary suite needs a lens domain")
            reps = bnd.corollary_bound(A, E, cfg.degrees, cfg.nodes, cfg.tolerance)
        else:
            reps = bnd.theorem_check(A, E, suite[-1], cfg.degrees, cfg.nodes, cfg.tolerance)
        for r in reps:
            d = r.to_dict()
            d["seed"] = seed
            reports.append(d)
    write_json(out / "reports.json", reports)
    cols = ["seed", "n", "kind", "v", "gamma", "norm_FnA", "bound_lemma3", "bound_theorem", "bound_est6bis",
            "est6bis_middle", "passed", "failures"]
    write_csv(out / "reports.csv", cols,
              [[r[c] if c != "failures" else ";".join(r[c]) for c in cols] for r in reports])
    n_fail = sum(not r["passed"] for r in reports)
    print(f"{len(reports)} reports, {n_fail} failed")
    return EXIT_OK if n_fail == 0 else EXIT_FAIL


def cmd_gmres_compare(args) -> int:
    cfg = _config(args)
    out = _out_dir(cfg.out)
    seed, A = _matrices(cfg)[0]
    E = _domain_for(cfg.domain, A)
    gamma(build_map(E))  # raises DomainContainsOrigin when 0 lies in E
    rng = np.random.default_rng(cfg.matrix.seed)
    b = rng.standard_normal(A.shape[0]) + 1j * rng.standard_normal(A.shape[0])
    b /= np.linalg.norm(b)
    n_max = min(cfg.n_range[1], A.shape[0])
    trace = gmres_run(A, b, n_max, descriptor={"domain": E.to_dict()}, seed=seed)
    est = bnd.gmres_bounds(A, E, len(trace.residual_norms) - 1)
    nb = float(np.linalg.norm(b))
    bound = [x * nb for x in est]
    write_trace_csv(out / "gmres.csv", trace, bound)
    bad = [k for k, (r, x) in enumerate(zip(trace.residual_norms, bound)) if r > x + 1e-8]
    print(f"{len(trace.residual_norms) - 1} GMRES steps; bound violated at {bad or 'no'} steps")
    return EXIT_OK if not bad else EXIT_FAIL


def _lens_row(E: Lens, elman):
    ang = E.angles
    g_closed = lens_gamma_closed_form(ang)
    g_num = gamma(build_map(E))
    return [E.c0, ang.theta0, ang.theta1, ang.arg_a, g_closed, g_num, elman]


def cmd_lens_gamma(args) -> int:
    header = ["c0", "theta0", "theta1", "arg_a", "gamma_closed", "gamma_numeric", "elman_limit"]
    if args.sweep:
        beta = args.beta
        if not 0 < beta < math.pi / 2:
            raise ConfigurationError("--beta must lie in (0, pi/2)")
        target = elman_gamma(beta)
        rows = [_lens_row(bnd.elman_lens(beta, args.r1, -(10.0**k) * args.r1), target)
                for k in range(1, args.kmax + 1)]
    else:
        if args.config:
            spec = load_config(args.config).domain
        else:
            if None in (args.c0, args.r0, args.c1):
                raise ConfigurationError("give --config or all of --c0 --r0 --c1 --r1")
            spec = {"type": "lens", "c0": args.c0, "r0": args.r0, "c1": args.c1, "r1": args.r1}
        E = domain_from_dict(spec)
        if not isinstance(E, Lens):
            raise ConfigurationError("lens-gamma needs a lens domain")
        t1 = E.angles.theta1
        rows = [_lens_row(E, elman_gamma(t1) if 0 < t1 < math.pi / 2 else None)]
    out = _out_dir(args.out or "out")
    write_csv(out / "lens_gamma.csv", header, rows)
    worst = max(abs(r[4] - r[5]) for r in rows)
    for r in rows:
        print(" ".join(f"{h}={'' if x is None else format(x, '.10g')}" for h, x in zip(header, r)))
    return EXIT_OK if worst <= 1e-10 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--out", help="output directory (overrides the config)")
    common.add_argument("--seed", type=int, help="matrix seed (overrides the config)")
    common.add_argument("--nodes", type=int, help="boundary quadrature nodes")
    common.add_argument("--nmax", type=int, help="largest polynomial degree / GMRES step")

    parser = argparse.ArgumentParser(prog="faberkit", description="Faber polynomial bounds for matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("numrange", parents=[common], help="numerical range polygon and radius")
    p.add_argument("--matrix", help="Matrix Market file (instead of the config matrix)")
    p.add_argument("--angles", type=int, default=360)
    p.set_defaults(func=cmd_numrange)

    p = sub.add_parser("map-eval", parents=[common], help="evaluate the exterior map on a level curve")
    p.add_argument("--radius", type=float, default=1.5, help="level |Phi| = radius to sample")
    p.add_argument("--points", type=int, default=256)
    p.set_defaults(func=cmd_map_eval)

    p = sub.add_parser("faber-coeffs", parents=[common], help="Faber and Laurent coefficients")
    p.set_defaults(func=cmd_faber_coeffs)

    p = sub.add_parser("bound-suite", parents=[common], help="bound reports for seeded matrices")
    p.set_defaults(func=cmd_bound_suite)

    p = sub.add_parser("gmres-compare", parents=[common], help="GMRES residuals against the Faber estimate")
    p.set_defaults(func=cmd_gmres_compare)

    p = sub.add_parser("lens-gamma", parents=[common], help="lens convergence factor table")
    for name in ("c0", "r0", "c1"):
        p.add_argument(f"--{name}", type=float)
    p.add_argument("--r1", type=float, default=1.0)
    p.add_argument("--sweep", action="store_true", help="Elman-limit sweep c0 = -10**k r1")
    p.add_argument("--beta", type=float, default=math.pi / 4)
    p.add_argument("--kmax", type=int, default=4)
    p.set_defaults(func=cmd_lens_gamma)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CONFIG_ERRORS as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _CONVERGENCE_ERRORS as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
