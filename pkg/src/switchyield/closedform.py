"""Analytic results: the free-energy gap threshold, the thermodynamic-limit
yield, asymptotic conversion rate, and the two-switch piecewise yields.

Auxiliary shorthands used throughout: g(x) = (1-x)^2, h(x) = (1+e^{-x})^2.
All two-switch formulas require the high-excitation regime
q >= 1/(1+e^w), where the excited levels lead the beta-ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .curves import high_excitation_threshold
from .states import DiagonalState, relative_entropy_to_gibbs

ROOT_TOL = 1e-10
CONTINUITY_TOL = 1e-8


def _g(x: float) -> float:
    return (1.0 - x) ** 2


def _h(x: float) -> float:
    return (1.0 + math.exp(-x)) ** 2


def _require_high_excitation(q: float, w: float) -> None:
    if q < high_excitation_threshold(w):
        raise ValueError(
            f"q={q} below the high-excitation threshold {high_excitation_threshold(w)}")


def delta_star(q: float, w: float) -> float:
    """Free energy of the initial single-switch state: q w + q ln q + (1-q) ln(1-q).

    Unit yield is allowed in the large-ensemble limit iff delta <= delta_star.
    """
    _require_high_excitation(q, w)
    ent = 0.0
    if q > 0:
        ent += q * math.log(q)
    if q < 1:
        ent += (1 - q) * math.log(1 - q)
    return q * w + ent


def _sigma_free_energy(gamma: float, delta: float) -> float:
    ent = 0.0
    if gamma > 0:
        ent += gamma * math.log(gamma)
    if gamma < 1:
        ent += (1 - gamma) * math.log(1 - gamma)
    return gamma * delta + ent


def gamma_td(delta: float, q: float, w: float) -> float:
    """Optimal asymptotic uncorrelated yield from F(initial) = F(target).

    1 for delta <= delta_star; otherwise the larger root of
    gamma*delta + gamma ln gamma + (1-gamma) ln(1-gamma) = delta_star,
    above the two-level Gibbs population 1/(1+e^delta).
    """
    ds = delta_star(q, w)
    if delta <= ds:
        return 1.0
    lo = 1.0 / (1.0 + math.exp(delta))
    if _sigma_free_energy(lo, delta) > ds:
        raise ValueError(f"no yield satisfies the free-energy equality at delta={delta}")
    hi = 1.0
    # F is increasing in gamma on [lo, 1]; F(1) = delta > delta_star here.
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if _sigma_free_energy(mid, delta) <= ds:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def conversion_rate(rho: DiagonalState, sigma: DiagonalState,
                    gibbs: DiagonalState) -> float:
    """Optimal asymptotic conversion rate D(rho||tau) / D(sigma||tau)."""
    d_sigma = relative_entropy_to_gibbs(sigma, gibbs)
    if abs(d_sigma) < 1e-15:
        raise ZeroDivisionError("target state is thermal: conversion rate diverges")
    return relative_entropy_to_gibbs(rho, gibbs) / d_sigma


@dataclass(frozen=True)
class PiecewiseYield:
    """Yield-vs-delta made of closed-form branches glued at branch points."""

    branches: tuple[Callable[[float], float], ...]
    branch_points: tuple[float, ...]
    domain: tuple[float, float]

    def __call__(self, delta: float) -> float:
        lo, hi = self.domain
        if not lo < delta <= hi:
            raise ValueError(f"delta={delta} outside domain ({lo}, {hi}]")
        for point, branch in zip(self.branch_points, self.branches):
            if delta <= point:
                return branch(delta)
        return self.branches[-1](delta)

    def check_continuity(self, tol: float = CONTINUITY_TOL) -> None:
        for k, point in enumerate(self.branch_points):
            jump = abs(self.branches[k](point) - self.branches[k + 1](point))
            if jump > tol:
                raise AssertionError(f"branch mismatch {jump} at delta={point}")


def _bisect_root(f: Callable[[float], float], lo: float, hi: float,
                 tol: float = ROOT_TOL) -> float:
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ValueError(f"no sign change on [{lo}, {hi}]: {flo}, {fhi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _u_branch1(delta: float, q: float, w: float) -> float:
    rad = 1.0 - _g(q) * (_h(w) - math.exp(-2 * delta))
    if rad < -1e-12:
        raise ValueError(f"negative radicand {rad} in uncorrelated branch 1")
    return math.sqrt(max(rad, 0.0))


def _u_branch2(delta: float, q: float, w: float) -> float:
    rad = _g(q) * (_h(w) - math.exp(-2 * delta) - 2 * math.exp(-delta))
    return 1.0 - math.sqrt(max(rad, 0.0))


def _c_branch1(delta: float, q: float, w: float) -> float:
    return 1.0 - 0.5 * _g(q) * (_h(w) - math.exp(-2 * delta))


def _c_branch2(delta: float, q: float, w: float) -> float:
    # e^{-delta} sqrt(h(delta)) = e^{-delta} + e^{-2 delta}
    return 1.0 - _g(q) * (_h(w) - math.exp(-delta) - math.exp(-2 * delta))


def _c_branch3(delta: float, q: float, w: float) -> float:
    try:
        boost = math.exp(w - 2 * delta)
    except OverflowError:
        boost = math.inf  # far left of its validity range; root-finding only
    return 0.5 * (1.0 - _g(q) * (_h(w) - _h(delta) + 1.0) + q * q
                  + q * math.sqrt(_g(q)) * (boost - math.exp(-w)))


@lru_cache(maxsize=None)
def branch_points_two_mol(q: float, w: float) -> tuple[float, float, float]:
    """(delta_u2, delta_c1, delta_c2): deltas where adjacent branches intersect.

    Root-found on the branch differences. delta_c1 and delta_c2 coincide with
    the beta-ordering changes 2e^{-d} + e^{-2d} = h(w) and e^{-2d} = h(w) - 1
    and are independent of q; delta_u2 depends on q.
    """
    _require_high_excitation(q, w)
    eps = 1e-9
    d_u2 = _bisect_root(lambda d: _u_branch1(d, q, w) - _u_branch2(d, q, w), eps, w)
    d_c1 = _bisect_root(lambda d: _c_branch1(d, q, w) - _c_branch2(d, q, w), eps, w)
    d_c2 = _bisect_root(lambda d: _c_branch2(d, q, w) - _c_branch3(d, q, w),
                        d_c1, w * (1 - 1e-12))
    return d_u2, d_c1, d_c2


def two_mol_uncorrelated_piecewise(q: float, w: float) -> PiecewiseYield:
    d_u2, _, _ = branch_points_two_mol(q, w)
    return PiecewiseYield(
        branches=(lambda d: _u_branch1(d, q, w), lambda d: _u_branch2(d, q, w)),
        branch_points=(d_u2,),
        domain=(0.0, w),
    )


def two_mol_correlated_piecewise(q: float, w: float) -> PiecewiseYield:
    _, d_c1, d_c2 = branch_points_two_mol(q, w)
    return PiecewiseYield(
        branches=(lambda d: _c_branch1(d, q, w), lambda d: _c_branch2(d, q, w),
                  lambda d: _c_branch3(d, q, w)),
        branch_points=(d_c1, d_c2),
        domain=(0.0, w),
    )


def gamma2_uncorrelated(delta: float, q: float, w: float) -> float:
    """Optimal two-switch yield with a product final state."""
    _require_high_excitation(q, w)
    return two_mol_uncorrelated_piecewise(q, w)(delta)


def gamma2_correlated(delta: float, q: float, w: float) -> float:
    """Optimal two-switch yield with a correlated (symmetric diagonal) final state."""
    _require_high_excitation(q, w)
    return two_mol_correlated_piecewise(q, w)(delta)


def two_mol_equal_yield_point(q: float, w: float) -> float:
    """The delta where the correlated and uncorrelated optima touch.

    At the touch point the correlated optimizer degenerates to the product
    state, so the contact is tangential (the gap never changes sign); found
    as the root of g(q) e^{-d} = s (1 - s) with s the uncorrelated branch-1
    value, equivalent to gap == 0.
    """
    _, d_c1, d_c2 = branch_points_two_mol(q, w)

    def contact(d: float) -> float:
        s = _u_branch1(d, q, w)
        return _g(q) * math.exp(-d) - s * (1.0 - s)

    return _bisect_root(contact, d_c1, d_c2)


def relative_advantage(gamma_c: float, gamma_u: float) -> float:
    """(gamma_c - gamma_u) / gamma_u."""
    if gamma_u <= 0:
        raise ZeroDivisionError("uncorrelated yield must be positive")
    return (gamma_c - gamma_u) / gamma_u
