"""Two-switch initial states with coherence across the degenerate W shell.

Coherence alpha between |W0> and |0W> is diagonalized away for free by an
energy-preserving unitary, leaving shell populations q(1-q) +- |alpha|; the
phase of alpha is absorbed. Only that diagonal remainder can matter.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .curves import (BISECT_TOL, build_curve, max_yield_against_curve)
from .logdomain import LogScalar
from .states import DiagonalState, LevelGroup, ModelParams
from .gibbslp import solve_full_gibbs_lp

_POSITIVITY_SLACK = 1e-15


@dataclass(frozen=True, slots=True)
class CoherentPairState:
    """Two switches with W-shell coherence of magnitude |alpha| <= q(1-q)."""

    q: float
    alpha_abs: float

    def __post_init__(self):
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"q must be in [0, 1], got {self.q}")
        if not 0.0 <= self.alpha_abs <= self.alpha_max + _POSITIVITY_SLACK:
            raise ValueError(
                f"|alpha|={self.alpha_abs} violates positivity (max {self.alpha_max})")

    @property
    def alpha_max(self) -> float:
        return self.q * (1.0 - self.q)

    @property
    def effective_populations(self) -> tuple[float, float, float, float]:
        """(ground, W plus, W minus, doubly excited) after diagonalization."""
        q, a = self.q, self.alpha_abs
        return ((1 - q) ** 2, q * (1 - q) + a, max(q * (1 - q) - a, 0.0), q * q)


def build_coherent_initial(q: float, w: float, alpha_abs: float) -> DiagonalState:
    """Diagonal remainder of the coherent pair on its four populated levels."""
    state = CoherentPairState(q, alpha_abs)
    p0, pw_hi, pw_lo, p2 = state.effective_populations
    return DiagonalState((
        LevelGroup.make(0.0, 1, LogScalar.from_linear(p0), "ground pair"),
        LevelGroup.make(w, 1, LogScalar.from_linear(pw_hi), "W shell +"),
        LevelGroup.make(w, 1, LogScalar.from_linear(pw_lo), "W shell -"),
        LevelGroup.make(2 * w, 1, LogScalar.from_linear(p2), "double excited"),
    ))


def _coherent_with_targets(q: float, w: float, delta: float,
                           alpha_abs: float) -> DiagonalState:
    """The coherent initial state carrying the zero-population target classes
    so its curve shares the total Gibbs weight of the product final states."""
    base = build_coherent_initial(q, w, alpha_abs)
    extra = (
        LevelGroup.make(delta, 2, LogScalar.zero(), "1 switched of 2"),
        LevelGroup.make(2 * delta, 1, LogScalar.zero(), "2 switched of 2"),
    )
    return DiagonalState(base.groups + extra)


def _nine_level_lp(q: float, w: float, delta: float, alpha_abs: float) -> float:
    """Full Gibbs-stochastic program on the 3x3 product structure; the W-shell
    asymmetry rules out the symmetric reduction."""
    state = CoherentPairState(q, alpha_abs)
    p0, pw_hi, pw_lo, p2 = state.effective_populations
    energies_1 = {"t": 0.0, "c": delta, "e": w}
    log_gw, pops, weights = [], [], []
    shell = [pw_hi, pw_lo]
    shell_idx = 0
    for s in product("tce", repeat=2):
        log_gw.append(-sum(energies_1[x] for x in s))
        weights.append(sum(1 for x in s if x == "c") / 2)
        if s == ("t", "t"):
            pops.append(p0)
        elif s == ("e", "e"):
            pops.append(p2)
        elif sorted(s) == ["e", "t"]:
            pops.append(shell[shell_idx])
            shell_idx += 1
        else:
            pops.append(0.0)
    gamma, _ = solve_full_gibbs_lp(log_gw, pops, weights)
    return gamma


def max_yield_coherent(q: float, w: float, delta: float, alpha_abs: float,
                       allow_final_correlations: bool,
                       tol: float = BISECT_TOL) -> float:
    """Optimal two-switch yield from the coherent initial state.

    Correlated final state: full nine-level program. Uncorrelated: bisection
    of gamma against the product target using the curve predicate.
    """
    if allow_final_correlations:
        return _nine_level_lp(q, w, delta, alpha_abs)
    params = ModelParams(delta=delta, w=w, q=q, n=2)
    rho_curve = build_curve(_coherent_with_targets(q, w, delta, alpha_abs))
    return max_yield_against_curve(rho_curve, params, tol)
