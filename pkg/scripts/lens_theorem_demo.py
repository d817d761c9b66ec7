"""Faber norms, bounds and GMRES residuals for one random lens configuration."""
import argparse

import numpy as np

from faberkit.bounds import corollary_bound, gmres_bounds, theorem_check
from faberkit.generators import lens_configuration
from faberkit.krylov import gmres_run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--case", choices=["a", "b"], default="b")
    ap.add_argument("--nmax", type=int, default=12)
    args = ap.parse_args()

    A, E = lens_configuration(args.seed, args.case)
    ang = E.angles
    print(f"lens c0={E.c0:.4f} r0={E.r0:.4f} c1={E.c1:.4f} r1={E.r1:.4f}  N={A.shape[0]}")
    print(f"theta0={ang.theta0:.6f} theta1={ang.theta1:.6f} arg a={ang.arg_a:.6f}")

    reps = theorem_check(A, E, args.case, range(1, args.nmax + 1))
    cor = corollary_bound(A, E, range(1, args.nmax + 1))
    print("preconditions:", reps[0].preconditions, cor[0].preconditions)
    print(f"v={reps[0].v:.6f} gamma={cor[0].gamma:.10f} lemma3={reps[0].bound_lemma3:.6f} "
          f"theorem={reps[0].bound_theorem:.6f} corollary={cor[0].bound_theorem:.6f}")
    print(f"{'n':>3} {'||F_n(A)||':>12} {'est middle':>12} {'est right':>12}")
    for r in reps:
        right = "n/a" if r.bound_est6bis is None else f"{r.bound_est6bis:.4e}"
        print(f"{r.n:3d} {r.norm_FnA:12.6f} {r.est6bis_middle:12.4e} {right:>12}")

    b = np.random.default_rng(args.seed).standard_normal(A.shape[0]) + 0j
    b /= np.linalg.norm(b)
    t = gmres_run(A, b, A.shape[0])
    bound = gmres_bounds(A, E, len(t.residual_norms) - 1)
    print(f"{'k':>3} {'residual':>12} {'estimate':>12}")
    for k, (res, est) in enumerate(zip(t.residual_norms, bound)):
        print(f"{k:3d} {res:12.4e} {est:12.4e}")


if __name__ == "__main__":
    main()
