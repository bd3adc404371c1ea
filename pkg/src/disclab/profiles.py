"""Exponentially flat boundary profiles and the bump-deformed surface.

A FlatProfile is a graph function h over the first coordinate of C^2,
either h = exp(-1/|y1|^s) in the imaginary part alone (kind
"exp_abs_y") or h = exp(-1/|z1|^s) in the full modulus (kind
"exp_abs_z", a contrast profile for exploratory scans).  Both vanish to
infinite order at the origin.

A BumpDeformation dresses a profile for a specific disc parameter
alpha: inside the window |theta| <= w, w = exp(-eps_window/(2 alpha)),
the surface is the undisturbed profile; beyond 2w it sits at the
constant plateau -eta delta/2; in between the two closed forms are
blended in the coordinate x = log2(|theta|/w).

The blend weight is an exp(-1/x)-type smooth step, not a polynomial
one.  Every derivative of the weight vanishes at both junctions, so
one-sided divided differences of any order match across them to
rounding error.  A quintic step would be C^2 but its third derivative
jumps, and that jump is visible in second divided differences at any
usable step size; the smooth step keeps the junction checks clean at
1e-8 and below.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .disc_family import DiscFamilyParams, phi_boundary

__all__ = [
    "KIND_IM",
    "KIND_ABS",
    "FlatProfile",
    "BumpDeformation",
    "profile_eval",
    "tilde_h_eval",
    "flatness_order_check",
]

KIND_IM = "exp_abs_y"  # h = exp(-1/|y1|^s), y1 = Im z1
KIND_ABS = "exp_abs_z"  # h = exp(-1/|z1|^s)

# Exponents below this underflow double precision; the true value is then
# smaller than any representable positive number and 0 is the exact
# rounding, not an approximation.
_EXP_FLOOR = -700.0


@dataclasses.dataclass(frozen=True)
class FlatProfile:
    kind: str
    s: float  # flatness exponent, > 0

    def __post_init__(self) -> None:
        if self.kind not in (KIND_IM, KIND_ABS):
            raise ValueError(f"kind must be {KIND_IM!r} or {KIND_ABS!r}, got {self.kind!r}")
        if not (self.s > 0.0):
            raise ValueError(f"s must be positive, got {self.s}")

    def boundary_trace(self, theta, phi, y2):
        """Surface height over the disc boundary; y2 is accepted for
        signature compatibility and unused (the profile depends on z1 only)."""
        phi = np.asarray(phi)
        x = np.abs(phi.imag) if self.kind == KIND_IM else np.abs(phi)
        return profile_eval(self, x, 0)


def profile_eval(p: FlatProfile, y1, derivative_order: int = 0):
    """Value or derivative (order 0, 1, 2) of exp(-1/|y|^s) at y = y1.

    The exponent is formed in log space; whenever it drops below -700 the
    result underflows doubles and 0 is returned exactly, as at y1 = 0.
    When the value is positive, |y| >= 700^{-1/s}, which keeps every
    power in the derivative factors finite.
    """
    y = np.asarray(y1, dtype=float)
    yy = np.atleast_1d(y).astype(float)
    ay = np.abs(yy)
    with np.errstate(divide="ignore", over="ignore"):
        expo = -(ay ** -p.s)
    live = expo >= _EXP_FLOOR
    h = np.where(live, np.exp(np.maximum(expo, _EXP_FLOOR)), 0.0)
    if derivative_order == 0:
        out = h
    elif derivative_order == 1:
        s = p.s
        safe = np.where(live, ay, 1.0)
        out = h * (s * safe ** (-s - 1.0)) * np.sign(yy)
    elif derivative_order == 2:
        s = p.s
        safe = np.where(live, ay, 1.0)
        out = h * (s * s * safe ** (-2.0 * s - 2.0) - s * (s + 1.0) * safe ** (-s - 2.0))
    else:
        raise ValueError(f"derivative_order must be 0, 1, or 2, got {derivative_order}")
    return float(out[0]) if y.ndim == 0 else out.reshape(y.shape)


def _blend_weight(x: np.ndarray) -> np.ndarray:
    """Smooth step: 0 for x <= 0, 1 for x >= 1, exp(-1/x) transition between.

    S(x) = a(x) / (a(x) + a(1-x)) with a(x) = exp(-1/x); all derivatives
    vanish at 0 and 1.  a underflows to exact 0 within about 1.3e-3 of
    either endpoint, so the step returns bitwise 0 or 1 there; a(x) and
    a(1-x) can never underflow simultaneously.
    """
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore"):
        lo = np.where(x > 0.0, np.exp(-1.0 / np.where(x > 0.0, x, 1.0)), 0.0)
        hi = np.where(x < 1.0, np.exp(-1.0 / np.where(x < 1.0, 1.0 - x, 1.0)), 0.0)
    return lo / (lo + hi)


@dataclasses.dataclass(frozen=True)
class BumpDeformation:
    """A flat profile pushed down to a plateau away from theta = 0."""

    base: FlatProfile
    delta: float  # bump depth; the far plateau sits at -eta*delta/2
    alpha: float  # squeeze parameter of the disc this surface dresses
    eps_window: float = None  # window exponent; defaults to delta
    eta: float = 1.0  # bump scale in [-1, 1]

    def __post_init__(self) -> None:
        if not (self.delta > 0.0):
            raise ValueError(f"delta must be positive, got {self.delta}")
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.eps_window is None:
            object.__setattr__(self, "eps_window", float(self.delta))
        if not (self.eps_window > 0.0):
            raise ValueError(f"eps_window must be positive, got {self.eps_window}")
        if not (-1.0 <= self.eta <= 1.0):
            raise ValueError(f"eta must lie in [-1, 1], got {self.eta}")

    def window(self) -> float:
        """Half-width of the undisturbed window: exp(-eps_window/(2 alpha))."""
        return math.exp(-self.eps_window / (2.0 * self.alpha))

    def plateau(self) -> float:
        return -0.5 * self.eta * self.delta

    def boundary_trace(self, theta, phi, y2):
        th = np.asarray(theta, dtype=float)
        # fold to a distance from theta = 0 on the circle, in [0, pi]
        dist = np.abs(np.mod(th + np.pi, 2.0 * np.pi) - np.pi)
        w = self.window()
        weight = _blend_weight(np.log2(np.maximum(dist, 1e-300) / w))
        base_vals = self.base.boundary_trace(theta, phi, y2)
        return (1.0 - weight) * base_vals + weight * self.plateau()


def tilde_h_eval(d: BumpDeformation, theta, y2=0.0):
    """Deformed surface height at boundary angle(s) theta in [-pi, pi].

    Standalone form of BumpDeformation.boundary_trace: the first
    component is reconstructed from d.alpha rather than passed in.
    """
    th = np.asarray(theta, dtype=float)
    tt = np.atleast_1d(th).astype(float)
    if np.any(np.abs(tt) > math.pi + 1e-12):
        raise ValueError("theta must lie in [-pi, pi]")
    phi = phi_boundary(DiscFamilyParams(d.alpha), np.mod(tt, 2.0 * np.pi))
    out = np.asarray(d.boundary_trace(tt, phi, y2), dtype=float)
    return float(out[0]) if th.ndim == 0 else out.reshape(th.shape)


def flatness_order_check(g, k: int, theta_grid):
    """Ratios g(theta)/theta^k along a grid decreasing to 0, plus a verdict.

    The ratios are assembled in log space, so theta^k may be far below
    the double-precision floor without harm; g(theta) = 0 contributes an
    exact 0 ratio, and genuinely growing ratios may reach inf.  The
    verdict is the attenuation test: final ratio at most 1e-10 times the
    first (an all-zero row also passes).
    """
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise ValueError(f"order k must be a positive integer, got {k!r}")
    th = np.asarray(theta_grid, dtype=float)
    if th.ndim != 1 or len(th) < 2:
        raise ValueError("theta_grid must be a 1-d sequence with at least 2 entries")
    if np.any(th <= 0.0) or np.any(np.diff(th) >= 0.0):
        raise ValueError("theta_grid must be positive and strictly decreasing")
    vals = np.asarray([float(g(t)) for t in th])
    if np.any(vals < 0.0) or not np.all(np.isfinite(vals)):
        raise ValueError("profile values must be finite and nonnegative")
    with np.errstate(divide="ignore"):
        logs = np.where(vals > 0.0, np.log(np.where(vals > 0.0, vals, 1.0)), -np.inf)
    with np.errstate(over="ignore"):
        ratios = np.exp(logs - k * np.log(th))
    if ratios[0] > 0.0:
        verdict = bool(ratios[-1] <= 1e-10 * ratios[0])
    else:
        verdict = bool(np.all(ratios == 0.0))
    return [float(r) for r in ratios], verdict
