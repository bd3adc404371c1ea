"""Flat profiles, the bump-deformed surface, and vanishing-order checks."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from disclab import (
    BumpDeformation,
    DiscFamilyParams,
    FlatProfile,
    KIND_ABS,
    KIND_IM,
    flatness_order_check,
    im_phi_boundary,
    phi_boundary,
    profile_eval,
    tilde_h_eval,
)


# ---- base profile


def test_profile_trivial_values():
    p = FlatProfile(kind=KIND_IM, s=1.0)
    assert profile_eval(p, 0.0) == 0.0
    assert abs(profile_eval(p, 0.5) - math.exp(-2.0)) <= 1e-16


def test_profile_log_space_evaluation_deep():
    # e^{-100} via the log-space path, pinned by 50-digit arithmetic
    p = FlatProfile(kind=KIND_ABS, s=2.0)
    with mpmath.workdps(50):
        want = float(mpmath.exp(-100))
    got = profile_eval(p, 0.1)
    assert abs(got - want) <= 1e-9 * want
    # underflow region returns an exact zero
    assert profile_eval(p, 1e-200) == 0.0


def test_profile_validation():
    with pytest.raises(ValueError):
        FlatProfile(kind="other", s=1.0)
    with pytest.raises(ValueError):
        FlatProfile(kind=KIND_IM, s=0.0)
    with pytest.raises(ValueError):
        profile_eval(FlatProfile(kind=KIND_IM, s=1.0), 0.5, derivative_order=3)


def test_profile_derivatives_match_finite_differences():
    p = FlatProfile(kind=KIND_IM, s=1.0)
    for y in (0.3, 0.7, 1.5):
        h = 1e-6 * y
        d1 = (profile_eval(p, y + h) - profile_eval(p, y - h)) / (2 * h)
        assert abs(profile_eval(p, y, 1) - d1) <= 1e-7 * max(1.0, abs(d1))
        # wider step for the second difference: at 1e-6 it is rounding noise
        h = 1e-4 * y
        d2 = (
            profile_eval(p, y + h) - 2 * profile_eval(p, y) + profile_eval(p, y - h)
        ) / h**2
        assert abs(profile_eval(p, y, 2) - d2) <= 1e-5 * max(1.0, abs(d2))


@settings(max_examples=40, deadline=None)
@given(
    s=st.floats(0.3, 3.0),
    y=st.floats(0.2, 5.0),  # away from the underflow clamp, where > degenerates to ==
    scale=st.floats(1.001, 3.0),
)
def test_profile_even_and_monotone(s, y, scale):
    p = FlatProfile(kind=KIND_IM, s=s)
    assert profile_eval(p, -y) == profile_eval(p, y)
    assert profile_eval(p, scale * y) > profile_eval(p, y)


def test_profile_underflow_region_is_flat_zero():
    p = FlatProfile(kind=KIND_ABS, s=2.0)
    assert profile_eval(p, 0.01) == 0.0
    assert profile_eval(p, 0.02) == 0.0


# ---- deformed surface


def bump(eta=1.0, delta=0.2, eps_window=0.2, alpha=0.1, s=1.0):
    return BumpDeformation(
        base=FlatProfile(kind=KIND_IM, s=s),
        delta=delta,
        alpha=alpha,
        eps_window=eps_window,
        eta=eta,
    )


def test_window_and_plateau_accessors():
    d = bump()
    assert abs(d.window() - math.exp(-1.0)) <= 1e-16
    assert d.plateau() == -0.1
    assert bump(eta=-0.5).plateau() == 0.05


def test_tilde_h_endpoint_values():
    d = bump()
    assert tilde_h_eval(d, 0.0) == 0.0
    assert abs(tilde_h_eval(d, math.pi) - (-0.1)) <= 1e-16
    assert abs(tilde_h_eval(d, -math.pi) - (-0.1)) <= 1e-16


def test_tilde_h_domain_check():
    with pytest.raises(ValueError):
        tilde_h_eval(bump(), 3.2)


def test_eta_zero_splits_cleanly():
    d = bump(eta=0.0)
    w = d.window()
    # undisturbed inside the window, zero on the far plateau
    base = FlatProfile(kind=KIND_IM, s=1.0)
    par = DiscFamilyParams(alpha=0.1)
    for th in (0.25 * w, 0.9 * w):
        y1 = float(im_phi_boundary(par, np.array([th]))[0])
        assert abs(tilde_h_eval(d, th) - profile_eval(base, y1)) <= 1e-18
    assert tilde_h_eval(d, 3.0) == 0.0
    assert tilde_h_eval(d, 2.0 * w * 1.001) == 0.0


def test_surface_is_affine_in_eta():
    d_plus, d_zero, d_minus = bump(1.0), bump(0.0), bump(-1.0)
    th = np.linspace(-math.pi, math.pi, 2001)
    h1 = np.asarray(tilde_h_eval(d_plus, th))
    h0 = np.asarray(tilde_h_eval(d_zero, th))
    hm = np.asarray(tilde_h_eval(d_minus, th))
    assert np.max(np.abs(h1 + hm - 2.0 * h0)) <= 1e-15


def test_junction_smoothness():
    # one-sided values and first two divided differences across both
    # junction circles agree to 1e-8
    d = bump()
    w = d.window()
    u = 3e-4
    for edge in (w, 2.0 * w):
        rel = u * edge
        inner = [tilde_h_eval(d, edge - 2 * rel), tilde_h_eval(d, edge - rel)]
        at = tilde_h_eval(d, edge)
        outer = [tilde_h_eval(d, edge + rel), tilde_h_eval(d, edge + 2 * rel)]
        assert abs(inner[1] - outer[0]) <= 1e-8
        d1_in = (at - inner[1]) / rel
        d1_out = (outer[0] - at) / rel
        assert abs(d1_in - d1_out) <= 1e-8
        d2_in = (at - 2 * inner[1] + inner[0]) / rel**2
        d2_out = (outer[1] - 2 * outer[0] + at) / rel**2
        assert abs(d2_in - d2_out) <= 1e-8


def test_bump_validation():
    with pytest.raises(ValueError):
        bump(delta=-0.1)
    with pytest.raises(ValueError):
        bump(eta=1.5)
    with pytest.raises(ValueError):
        bump(eps_window=-1.0)
    with pytest.raises(ValueError):
        bump(alpha=0.0)


def test_eps_window_defaults_to_delta():
    d = BumpDeformation(base=FlatProfile(kind=KIND_IM, s=1.0), delta=0.3, alpha=0.1)
    assert d.eps_window == 0.3


# ---- vanishing-order verification


def composed_im(alpha, s):
    par = DiscFamilyParams(alpha=alpha)
    prof = FlatProfile(kind=KIND_IM, s=s)

    def g(theta):
        y1 = float(im_phi_boundary(par, np.array([theta]))[0])
        return profile_eval(prof, y1)

    return g


def test_flatness_composed_profile_s1():
    grid = [10.0**-e for e in range(1, 27)]
    ratios, verdict = flatness_order_check(composed_im(0.1, 1.0), 5, grid)
    assert verdict is True
    assert ratios[0] > 0.0


def test_flatness_composed_modulus_s2():
    # the modulus-based profile decays like exp(-(alpha log theta)^2): the
    # ratio crest sits near theta = 1e-102 for k=5, so the grid must reach
    # well past it before the attenuation verdict can fire
    par = DiscFamilyParams(alpha=0.1)
    prof = FlatProfile(kind=KIND_ABS, s=2.0)

    def g(theta):
        z1 = phi_boundary(par, np.array([theta]))[0]
        return profile_eval(prof, abs(z1))

    grid = [10.0**-e for e in range(1, 131)]
    ratios, verdict = flatness_order_check(g, 5, grid)
    assert verdict is True
    assert all(np.isfinite(r) for r in ratios)
    assert max(ratios) > 1e200  # the interior crest is genuinely enormous


def test_flatness_fails_below_half():
    grid = [10.0**-e for e in range(1, 9)]
    ratios, verdict = flatness_order_check(composed_im(0.1, 0.4), 3, grid)
    assert verdict is False
    assert ratios[-1] > ratios[0]


def test_flatness_derivative_chain():
    # d/dtheta of the composed profile is itself rapidly vanishing: checked
    # with a relative central difference at each grid point
    g = composed_im(0.1, 1.0)

    def dg(theta):
        h = 1e-6 * theta
        return abs(g(theta + h) - g(theta - h)) / (2.0 * h)

    grid = [10.0**-e for e in range(1, 21)]
    ratios, verdict = flatness_order_check(dg, 3, grid)
    assert verdict is True


def test_flatness_validates_grid():
    g = composed_im(0.1, 1.0)
    with pytest.raises(ValueError):
        flatness_order_check(g, 0, [0.1, 0.01])
    with pytest.raises(ValueError):
        flatness_order_check(g, 2, [0.01, 0.1])
    with pytest.raises(ValueError):
        flatness_order_check(g, 2, [0.1, -0.01])
    with pytest.raises(ValueError):
        flatness_order_check(g, 2, [0.1])
    with pytest.raises(ValueError):
        flatness_order_check(lambda t: -1.0, 2, [0.1, 0.01])
