"""Lens convergence factor as the cut disk grows into a half-plane.

For each beta the lens is the disk |z| <= r1 minus the disk about c0 = -10**k r1
through Re z = r1 cos(beta). Prints gamma and its distance to the sector limit.
"""
import argparse
import math

from faberkit.bounds import elman_lens
from faberkit.conformal import build_map, elman_gamma, gamma, lens_gamma_closed_form


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--betas", type=float, nargs="+", default=[math.pi / 6, math.pi / 4, math.pi / 3])
    ap.add_argument("--r1", type=float, default=1.0)
    ap.add_argument("--kmax", type=int, default=6)
    args = ap.parse_args()

    print(f"{'beta':>8} {'k':>3} {'theta0':>12} {'gamma':>14} {'closed - numeric':>17} {'gap to limit':>13}")
    for beta in args.betas:
        target = elman_gamma(beta)
        for k in range(1, args.kmax + 1):
            E = elman_lens(beta, args.r1, -(10.0**k) * args.r1)
            g = gamma(build_map(E))
            g_closed = lens_gamma_closed_form(E.angles)
            print(f"{beta:8.4f} {k:3d} {E.angles.theta0:12.4e} {g:14.10f} {g_closed - g:17.2e} {abs(g - target):13.2e}")
        print(f"{'':8} lim {'':12} {target:14.10f}")


if __name__ == "__main__":
    main()
