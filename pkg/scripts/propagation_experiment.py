#!/usr/bin/env python3
"""Run the disc-deformation experiment and print a readable report.

Solves the Bishop equation for the squeezed disc attached to the bumped
surface at eta = 1, evaluates the radial derivative of the harmonic lift
at the squeeze point by both methods, walks the transversal profile
inward, and classifies the boundary of every disc in the eta family.
"""

import argparse
import re

from disclab import ExperimentConfig, NoAdmissibleAlpha, alpha_search, run_experiment


def _floats(text):
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    # let "--etas -1,0,1" parse as a value instead of an unknown option
    ap._negative_number_matcher = re.compile(r"^-(\d|\.\d)")
    ap.add_argument("--s", type=float, default=1.0)
    ap.add_argument("--alpha", type=float, default=0.2)
    ap.add_argument("--alphas", type=_floats, default=None,
                    help="decreasing search grid; overrides --alpha")
    ap.add_argument("--delta", type=float, default=0.2)
    ap.add_argument("--n", type=int, default=1 << 14)
    ap.add_argument("--etas", type=_floats, default=None)
    args = ap.parse_args(argv)

    kwargs = {"s": args.s, "alpha": args.alpha, "delta": args.delta, "n": args.n}
    if args.etas is not None:
        kwargs["eta_grid"] = args.etas
    try:
        cfg = ExperimentConfig(**kwargs)
        if args.alphas is not None:
            report = alpha_search(cfg, args.alphas)
        else:
            report = run_experiment(cfg)
    except NoAdmissibleAlpha as exc:
        print(f"no admissible alpha: {exc}")
        return 1
    except ValueError as exc:
        ap.error(str(exc))

    print(f"s={args.s:g}  alpha={report.alpha:g}  delta={args.delta:g}  n={args.n}")
    print(f"radial derivative  quadrature {report.radial_derivative_quadrature:+.9e}")
    print(f"                   spectral   {report.radial_derivative_spectral:+.9e}")
    print(f"                   discrepancy {report.radial_discrepancy:.3e}")
    print(f"points_down={str(report.points_down).lower()}  "
          f"coverage_min_x2={report.coverage_min_x2:+.3e}")
    print()
    print("transversal profile along the inward radius:")
    for r, val in report.transversal_profile:
        print(f"  r={r:<8g} u={val:+.6e}")
    print()
    print(f"{'eta':>6} {'conv':>5} {'on_surface':>10} {'in_ball':>8} "
          f"{'neither':>7} {'rad_deriv':>13} {'min_x2':>13}")
    for c in report.eta_classifications:
        print(f"{c.eta:>6.2f} {str(c.converged).lower():>5} {c.on_surface:>10} "
              f"{c.in_ball:>8} {c.neither:>7} {c.radial_derivative:>13.4e} "
              f"{c.min_x2:>13.4e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
