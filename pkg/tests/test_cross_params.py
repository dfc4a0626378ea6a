"""Oracle agreement away from the headline parameter point (q=0.5, w=30).

The symmetric reduction (and with it the closed forms, which it matches
exactly) restricts final population to the cis ladder. Mixed cis-excited
levels also carry yield weight but only e^{-(delta+w)}-scale capacity, so
the reduction undershoots the unreduced optimum by at most O(e^{-w}): 9e-14
at w = 30 (invisible to every tolerance here), visible at w <= 12. Both
remain valid lower bounds - they encode feasible final states.
"""

import math

import pytest

from switchyield.states import ModelParams
from switchyield.curves import high_excitation_threshold, max_uncorrelated_yield
from switchyield.closedform import gamma2_correlated, gamma2_uncorrelated
from switchyield.gibbslp import brute_force_full_lp, max_correlated_yield


@pytest.mark.parametrize("q", [0.2, 0.35, 0.65, 0.9])
@pytest.mark.parametrize("delta", [0.3, 1.0, 4.0, 12.0, 16.0, 22.0, 28.0])
def test_two_switch_triangle_other_q(q, delta):
    p = ModelParams(delta, 30.0, q, 2)
    closed = gamma2_correlated(delta, q, 30.0)
    reduced, _ = max_correlated_yield(p)
    brute = brute_force_full_lp(p)
    assert reduced == pytest.approx(closed, abs=1e-7)
    assert brute == pytest.approx(closed, abs=1e-7)
    closed_u = gamma2_uncorrelated(delta, q, 30.0)
    assert max_uncorrelated_yield(p) == pytest.approx(closed_u, abs=1e-7)


@pytest.mark.parametrize("w", [20.0, 45.0])
@pytest.mark.parametrize("delta_frac", [0.05, 0.3, 0.55, 0.9])
def test_two_switch_triangle_other_w(w, delta_frac):
    delta = delta_frac * w
    p = ModelParams(delta, w, 0.5, 2)
    closed = gamma2_correlated(delta, 0.5, w)
    reduced, _ = max_correlated_yield(p)
    assert reduced == pytest.approx(closed, abs=1e-7)
    assert brute_force_full_lp(p) == pytest.approx(closed, abs=1e-7)


@pytest.mark.parametrize("w", [8.0, 12.0])
def test_small_w_reduction_is_a_lower_bound_within_boltzmann_envelope(w):
    # the closed form tracks the reduced program exactly; both may sit below
    # the unreduced optimum by up to ~e^{-w} (mixed cis-excited targets)
    for delta_frac in (0.1, 0.25, 0.5, 0.8):
        delta = delta_frac * w
        p = ModelParams(delta, w, 0.5, 2)
        closed = gamma2_correlated(delta, 0.5, w)
        reduced, _ = max_correlated_yield(p)
        brute = brute_force_full_lp(p)
        assert reduced == pytest.approx(closed, abs=1e-8)
        assert reduced <= brute + 1e-9
        assert brute - reduced <= math.exp(-w)
        # the product-final-state bound has no such envelope: its support
        # restriction is definitional
        closed_u = gamma2_uncorrelated(delta, 0.5, w)
        assert max_uncorrelated_yield(p) == pytest.approx(closed_u, abs=1e-8)


@pytest.mark.parametrize("q", [0.3, 0.7])
@pytest.mark.parametrize("delta", [0.5, 3.0, 14.0, 21.0])
def test_three_switch_reduction_other_q(q, delta):
    p = ModelParams(delta, 30.0, q, 3)
    reduced, _ = max_correlated_yield(p)
    assert brute_force_full_lp(p) == pytest.approx(reduced, abs=1e-7)


def test_near_threshold_excitation():
    # down at the beta-ordering threshold the closed form still tracks the
    # reduced program and the Boltzmann envelope still bounds the gap
    w = 8.0
    q = 2.0 * high_excitation_threshold(w)
    for delta in (0.5, 2.0, 5.0, 7.0):
        p = ModelParams(delta, w, q, 2)
        reduced, _ = max_correlated_yield(p)
        brute = brute_force_full_lp(p)
        closed = gamma2_correlated(delta, q, w)
        assert reduced == pytest.approx(closed, abs=1e-8)
        assert reduced <= brute + 1e-9
        assert brute - reduced <= math.exp(-w)
        closed_u = gamma2_uncorrelated(delta, q, w)
        assert max_uncorrelated_yield(p) == pytest.approx(closed_u, abs=1e-8)
