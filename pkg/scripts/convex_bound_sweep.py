"""Largest ||F_n(A)|| over random matrices with W(A) inside a disk or ellipse.

The convex bound says this never exceeds 2; the sweep shows how close random
matrices of each family come to it.
"""
import argparse

import numpy as np

from faberkit.bounds import convex_check
from faberkit.generators import enclosing_disk, enclosing_ellipse, make_matrix


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=40)
    ap.add_argument("--size", type=int, default=12)
    ap.add_argument("--nmax", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'family':>14} {'domain':>8} {'max ||F_n(A)||':>15} {'argmax n':>9}")
    for family in ("random-dense", "normal-random", "jordan", "grcar-like"):
        for kind in ("disk", "ellipse"):
            worst, at = 0.0, 0
            for i in range(args.count):
                A = make_matrix(family, args.size, args.seed + i) + 0.1 * make_matrix("random-dense", args.size,
                                                                                         10_000 + i)
                E = enclosing_disk(A) if kind == "disk" else enclosing_ellipse(A, rng.uniform(0.3, 0.9),
                                                                               rng.uniform(0, np.pi))
                for r in convex_check(A, E, range(1, args.nmax + 1)):
                    if r.norm_FnA > worst:
                        worst, at = r.norm_FnA, r.n
            print(f"{family:>14} {kind:>8} {worst:15.6f} {at:9d}")


if __name__ == "__main__":
    main()
