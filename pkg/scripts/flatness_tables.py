#!/usr/bin/env python3
"""Attenuation summary for the composed height profile.

For each exponent s and comparison order k this prints the ratio
g(theta)/theta^k at the first and last grid points and the resulting
attenuation factor, where g = exp(-1/|Im phi_alpha|^s) is the surface
height read along the squeezed-disc boundary.  Assembled in the
log(theta) domain, so grids can run far below 1e-300 without underflow
deciding the verdict.
"""

import argparse
import math

from disclab import inv_abs_im_phi_logtheta

_LN10 = math.log(10.0)


def _floats(text):
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def _log_ratio(alpha: float, s: float, k: int, decade: float) -> float:
    t = decade * _LN10  # theta = 10^(-decade)
    return -inv_abs_im_phi_logtheta(alpha, t) ** s + k * t


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s-values", type=_floats, default=(0.4, 1.0, 2.0))
    ap.add_argument("--alpha", type=float, default=0.1)
    ap.add_argument("--k-max", type=int, default=8)
    ap.add_argument("--decades", type=float, default=8.0,
                    help="grid runs theta = 10^-1 .. 10^-decades")
    args = ap.parse_args(argv)
    if args.decades < 2.0:
        ap.error("need at least two decades")

    print(f"alpha={args.alpha:g}, grid theta=1e-1..1e-{args.decades:g}")
    print(f"{'s':>5} {'k':>3} {'log10 first':>12} {'log10 last':>11} "
          f"{'attenuation':>12} {'flat to order k':>15}")
    for s in args.s_values:
        for k in range(1, args.k_max + 1):
            first = _log_ratio(args.alpha, s, k, 1.0) / _LN10
            last = _log_ratio(args.alpha, s, k, args.decades) / _LN10
            att = last - first
            verdict = "yes" if att <= -10.0 else "no"
            print(f"{s:>5.3g} {k:>3} {first:>12.3f} {last:>11.3f} "
                  f"{'1e' + format(att, '+.1f'):>12} {verdict:>15}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
