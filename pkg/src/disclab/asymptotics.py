"""Quadrature for the flat boundary integral and its small-alpha dichotomy.

The object of interest is

    F_alpha = integral_0^{exp(-delta/alpha)} exp(-1/|Im phi_alpha|^s) / theta^2 dtheta,

which decides the sign of the attached disc's radial derivative.  After
the substitution t = -log theta this is

    F_alpha = integral_{delta/alpha}^{infinity} exp(t - E(t)) dt,
    E(t) = (1/|Im phi_alpha(e^{i e^{-t}})|)^s,

with E evaluated from the exact boundary formula, not from any
asymptotic simplification of it.

The integrand spans hundreds of orders of magnitude across parameter
space, so everything runs in the log domain: the quadrature integrates
exp(eta(t) - M) with eta(t) = t - E(t) and M the crest value located by
a coarse scan, and reports log_value = M + log(integral) alongside the
(possibly underflowing) value itself.  For s well above 1, log_value in
the thousands of negative units is routine; value then rounds to an
exact 0.0 while log_value still orders results correctly, which is what
the dichotomy verdicts use.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .disc_family import inv_abs_im_phi_logtheta
from .exceptions import DiscLabError, QuadratureNonConvergent

__all__ = [
    "FAlphaSpec",
    "QuadratureResult",
    "ScanResult",
    "f_alpha",
    "dichotomy_scan",
    "positive_window",
]

# exp() of anything below this underflows double precision
_LOG_TINY = -745.0

# the coarse crest scan steps t by this much
_SCAN_STEP = 0.25

# integration stops where the log-integrand has dropped this far below
# its crest; exp(-40) is invisible at the tolerances accepted here
_CREST_DROP = 40.0


@dataclasses.dataclass(frozen=True)
class FAlphaSpec:
    alpha: float  # squeeze parameter in (0, 1]
    s: float  # flatness exponent; the integral needs s > 1/2
    delta: float = 1.0  # cutoff exponent: integrate theta < exp(-delta/alpha)
    t_max_cap: float = 600.0  # upper truncation in the t = -log theta variable
    rel_tol: float = 1e-8

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not (self.s > 0.5):
            raise ValueError(
                f"s must exceed 1/2 (the composed profile is not flat below), got {self.s}"
            )
        if not (self.delta > 0.0):
            raise ValueError(f"delta must be positive, got {self.delta}")
        if self.t_max_cap < self.delta / self.alpha:
            raise ValueError(
                f"t_max_cap {self.t_max_cap} is below the lower limit "
                f"delta/alpha = {self.delta / self.alpha:.3f}"
            )
        if not (0.0 < self.rel_tol < 1.0):
            raise ValueError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")


@dataclasses.dataclass(frozen=True)
class QuadratureResult:
    value: float  # F_alpha, 0.0 when it underflows doubles
    abs_err: float  # error estimate in the same units as value
    truncated: bool  # whether t_max_cap cut off a still-significant tail
    log_value: float  # log F_alpha, finite even when value underflows
    rel_err: float  # error estimate relative to the value


def _log_integrand(spec: FAlphaSpec, t):
    """eta(t) = t - E(t); the integrand of F_alpha is exp(eta)."""
    inv = inv_abs_im_phi_logtheta(spec.alpha, t)
    return t - inv ** spec.s


def _adaptive_simpson(g, a: float, b: float, tol: float, max_depth: int = 40):
    """Adaptive Simpson with Richardson correction; returns (value, err)."""

    def simp(x0, f0, x1, f1, x2, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    span = b - a
    m = 0.5 * (a + b)
    fa, fm, fb = g(a), g(m), g(b)
    stack = [(a, fa, m, fm, b, fb, simp(a, fa, m, fm, b, fb), 0)]
    total = 0.0
    err = 0.0
    while stack:
        x0, f0, xm, fm_, x2, f2, whole, depth = stack.pop()
        if depth > max_depth:
            raise QuadratureNonConvergent(
                f"Simpson bisection exceeded depth {max_depth} on "
                f"[{x0:.6g}, {x2:.6g}]"
            )
        lm = 0.5 * (x0 + xm)
        rm = 0.5 * (xm + x2)
        flm = g(lm)
        frm = g(rm)
        left = simp(x0, f0, lm, flm, xm, fm_)
        right = simp(xm, fm_, rm, frm, x2, f2)
        d = left + right - whole
        if abs(d) <= 15.0 * tol * max((x2 - x0) / span, 1e-12):
            total += left + right + d / 15.0
            err += abs(d) / 15.0
        else:
            stack.append((x0, f0, lm, flm, xm, fm_, left, depth + 1))
            stack.append((xm, fm_, rm, frm, x2, f2, right, depth + 1))
    return total, err


def f_alpha(spec: FAlphaSpec) -> QuadratureResult:
    """Evaluate F_alpha by crest-scaled adaptive Simpson quadrature."""
    t0 = spec.delta / spec.alpha
    cap = spec.t_max_cap

    count = max(2, int(math.ceil((cap - t0) / _SCAN_STEP)) + 1)
    ts = np.linspace(t0, cap, count)
    etas = _log_integrand(spec, ts)
    i_max = int(np.argmax(etas))
    crest = float(etas[i_max])

    t_end = cap
    hit_cap = True
    for i in range(i_max + 1, len(ts)):
        if etas[i] < crest - _CREST_DROP:
            t_end = float(ts[i])
            hit_cap = False
            break
    if t_end <= t0:
        t_end = min(t0 + _SCAN_STEP, cap)

    def g(t: float) -> float:
        e = float(_log_integrand(spec, t)) - crest
        return math.exp(e) if e > _LOG_TINY else 0.0

    # rough mass in crest units, to set the absolute Simpson budget
    sel = (ts >= t0) & (ts <= t_end)
    rough = float(
        np.trapezoid(np.exp(np.maximum(etas[sel] - crest, _LOG_TINY)), ts[sel])
    )
    tol = spec.rel_tol * max(rough, 1e-12)
    integral, err = _adaptive_simpson(g, t0, float(t_end), tol)
    if not (integral > 0.0):
        # the scan guarantees at least one crest-level sample, so a zero
        # here means the interval collapsed; treat as exact zero mass
        integral = 5e-324
        err = max(err, integral)

    log_value = crest + math.log(integral)
    value = math.exp(log_value) if log_value > _LOG_TINY else 0.0
    rel_err = err / integral
    abs_err = value * rel_err
    truncated = bool(
        hit_cap and float(_log_integrand(spec, cap)) > math.log(spec.rel_tol) + log_value
    )
    return QuadratureResult(
        value=value,
        abs_err=abs_err,
        truncated=truncated,
        log_value=log_value,
        rel_err=rel_err,
    )


@dataclasses.dataclass(frozen=True)
class ScanResult:
    """Rows of (s, alpha, result-or-None) plus a verdict per s value."""

    cells: tuple  # (s, alpha, QuadratureResult | None) triples, scan order
    verdicts: tuple  # (s, verdict string) pairs, one per s


def dichotomy_scan(s_values, alpha_values, delta: float) -> ScanResult:
    """Tabulate F_alpha over a parameter grid and classify each s.

    Verdicts follow the log-domain values so that rows far below the
    double-precision floor still order: "vanishing" needs strictly
    decreasing log F_alpha along the alpha grid with the final value
    below 1e-3; "diverging" needs strictly increasing with the final
    value above 10; anything else, including any failed cell, is
    "inconclusive".
    """
    alphas = [float(a) for a in alpha_values]
    if len(alphas) < 3:
        raise ValueError("need at least 3 alpha values")
    if any(b >= a for a, b in zip(alphas, alphas[1:])):
        raise ValueError("alpha values must be strictly decreasing")
    svals = [float(s) for s in s_values]
    if not svals:
        raise ValueError("need at least one s value")
    if any(s <= 0.5 for s in svals):
        raise ValueError("every s must exceed 1/2")

    cells = []
    verdicts = []
    for s in svals:
        logs = []
        for a in alphas:
            try:
                res = f_alpha(FAlphaSpec(alpha=a, s=s, delta=delta))
            except DiscLabError:
                cells.append((s, a, None))
                logs.append(math.nan)
                continue
            cells.append((s, a, res))
            logs.append(res.log_value)
        if any(math.isnan(x) for x in logs):
            verdicts.append((s, "inconclusive"))
            continue
        decreasing = all(y < x for x, y in zip(logs, logs[1:]))
        increasing = all(y > x for x, y in zip(logs, logs[1:]))
        if decreasing and logs[-1] < math.log(1e-3):
            verdicts.append((s, "vanishing"))
        elif increasing and logs[-1] > math.log(10.0):
            verdicts.append((s, "diverging"))
        else:
            verdicts.append((s, "inconclusive"))
    return ScanResult(cells=tuple(cells), verdicts=tuple(verdicts))


def positive_window(spec: FAlphaSpec, bracket_factor: float = 10.0) -> float:
    """Upper end of the region where the log-integrand t - E(t) is positive.

    Returns 0.0 when the log-integrand never becomes positive beyond the
    lower limit.  For s < 1 this endpoint grows like a power of 1/alpha
    with exponent s/(2s-1); the scan bracket is sized from that power law
    with a wide safety factor, then the actual sign change is located by
    bisection, so the bracket choice cannot bias the located value.
    """
    t0 = spec.delta / spec.alpha
    if spec.s < 1.0:
        guess = (2.0 ** (1.0 / spec.s) / spec.alpha) ** (spec.s / (2.0 * spec.s - 1.0))
    else:
        guess = 10.0 * t0
    hi = max(bracket_factor * guess, t0 + 10.0)
    ts = np.geomspace(t0, hi, 4096)
    etas = _log_integrand(spec, ts)
    pos = np.nonzero(etas > 0.0)[0]
    if len(pos) == 0:
        return 0.0
    last = int(pos[-1])
    if last == len(ts) - 1:
        raise QuadratureNonConvergent(
            "log-integrand still positive at the scan bracket; widen bracket_factor"
        )
    lo, up = float(ts[last]), float(ts[last + 1])
    for _ in range(80):
        mid = 0.5 * (lo + up)
        if float(_log_integrand(spec, mid)) > 0.0:
            lo = mid
        else:
            up = mid
    return 0.5 * (lo + up)
