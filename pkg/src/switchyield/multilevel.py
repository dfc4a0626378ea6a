"""Five-level photoswitch: one extra vibrational level per ground well.

Per-molecule energies (0, omega0, delta, delta + omega_delta, w). The
unexcited population is locally thermalized across the trans well at inverse
temperature beta0; both cis-well levels count toward the yield.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .logdomain import LogScalar
from .states import DiagonalState, LevelGroup
from .gibbslp import solve_full_gibbs_lp

FIVE_LEVEL_N_MAX = 2


@dataclass(frozen=True, slots=True)
class FiveLevelParams:
    delta: float
    w: float
    omega0: float
    omega_delta: float
    beta0: float
    q: float

    def __post_init__(self):
        if not self.delta > 0 or not self.w > 0:
            raise ValueError("delta and w must be positive")
        if not (0 < self.omega0 < self.w and 0 < self.omega_delta < self.w):
            raise ValueError("well splittings must be in (0, w)")
        if not self.beta0 > 0:
            raise ValueError("beta0 must be positive")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"q must be in [0, 1], got {self.q}")

    @property
    def energies(self) -> tuple[float, float, float, float, float]:
        return (0.0, self.omega0, self.delta, self.delta + self.omega_delta, self.w)

    @property
    def ground_split(self) -> tuple[float, float]:
        """Locally thermal partition of the unexcited population 1 - q."""
        z0 = 1.0 + math.exp(-self.beta0 * self.omega0)
        return ((1 - self.q) / z0, (1 - self.q) * math.exp(-self.beta0 * self.omega0) / z0)


def five_level_initial(params: FiveLevelParams) -> DiagonalState:
    q0, q_w0 = params.ground_split
    e = params.energies
    return DiagonalState((
        LevelGroup.make(e[0], 1, LogScalar.from_linear(q0), "trans ground"),
        LevelGroup.make(e[1], 1, LogScalar.from_linear(q_w0), "trans vibr"),
        LevelGroup.make(e[2], 1, LogScalar.zero(), "cis ground"),
        LevelGroup.make(e[3], 1, LogScalar.zero(), "cis vibr"),
        LevelGroup.make(e[4], 1, LogScalar.from_linear(params.q), "excited"),
    ))


def five_level_yield(params: FiveLevelParams, n: int = 2) -> float:
    """Optimal yield of n five-level switches, correlations allowed.

    Full unreduced program on the 5^n product levels; the yield weight of a
    product level is the fraction of switches sitting in either cis level.
    """
    if not 1 <= n <= FIVE_LEVEL_N_MAX:
        raise ValueError(f"n={n} outside [1, {FIVE_LEVEL_N_MAX}]")
    e1 = params.energies
    q0, q_w0 = params.ground_split
    p1 = (q0, q_w0, 0.0, 0.0, params.q)
    cis = (0, 0, 1, 1, 0)
    log_gw, pops, weights = [], [], []
    for s in product(range(5), repeat=n):
        log_gw.append(-sum(e1[t] for t in s))
        pops.append(math.prod(p1[t] for t in s))
        weights.append(sum(cis[t] for t in s) / n)
    gamma, _ = solve_full_gibbs_lp(log_gw, pops, weights)
    return gamma
