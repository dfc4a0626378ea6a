"""Typical-subspace approximation and the large-ensemble linear program.

Keeping only the dominant degenerate shell of the product initial state
(excitation count k ~ q n) collapses the transfer program to one variable
per target class, with caps x_i <= exp(-i delta + n delta_star). That
program is a continuous knapsack: objective coefficient over budget
coefficient is i/n for variable i, so filling in descending i is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closedform import delta_star
from .logdomain import NEG_INF, LogScalar, log_comb, log_sub
from .simplex import OPTIMAL, solve_lp
from .states import DiagonalState, LevelGroup, ModelParams

SIMPLEX_CHECK_N_MAX = 30
_CHECK_ATOL = 1e-9


def typical_state(params: ModelParams) -> DiagonalState:
    """Uniform state on the C(n, k) levels at energy k w, k = round(q n)."""
    n, q, w = params.n, params.q, params.w
    k = round(q * n)  # ties to even
    k = min(max(k, 0), n)
    log_deg = log_comb(n, k)
    return DiagonalState((
        LevelGroup(k * w, log_deg, LogScalar(-log_deg), f"{k} excited of {n}",
                   math.comb(n, k) if n <= 300 else None),
    ))


def typical_free_energy(n: int, q: float, w: float) -> float:
    k = round(q * n)
    return k * w - log_comb(n, k)


def free_energy_gap(n: int, q: float, w: float) -> float:
    """Signed relative free-energy error of the typical-shell approximation:
    (F(product) - F(typical)) / F(product), with F(product) = n F(single).

    Truncating to the dominant shell and renormalizing sharpens the state, so
    F(typical) >= F(product): the gap is <= 0 and shrinks as O(log n / n).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    f_product = n * delta_star(q, w)
    return (f_product - typical_free_energy(n, q, w)) / f_product


@dataclass(frozen=True)
class AsymptoticLP:
    """max sum C(n,i)(i/n) x_i  s.t.  sum C(n,i) x_i <= 1,  0 <= x_i <= u_i,
    with ln u_i = min(0, -i delta + n delta_star). All data kept in logs."""

    n: int
    k_typ: int
    log_budget_coeffs: tuple[float, ...]
    log_caps: tuple[float, ...]

    def objective_ratio(self, i: int) -> float:
        return i / self.n


def build_asymptotic_lp(params: ModelParams) -> AsymptoticLP:
    n, d, q, w = params.n, params.delta, params.q, params.w
    nds = n * delta_star(q, w)
    return AsymptoticLP(
        n=n,
        k_typ=round(q * n),
        log_budget_coeffs=tuple(log_comb(n, i) for i in range(1, n + 1)),
        log_caps=tuple(min(0.0, -i * d + nds) for i in range(1, n + 1)),
    )


def greedy_asymptotic_yield(params: ModelParams) -> float:
    """Exact optimum of the asymptotic program by descending-ratio fill.

    The budget is tracked as a log-domain remainder with exact-zero
    detection, so the delta <= delta_star case returns 1.0 identically.
    """
    lp = build_asymptotic_lp(params)
    n = lp.n
    log_budget = 0.0
    taken = []
    for i in range(n, 0, -1):
        if log_budget == NEG_INF:
            break
        lC = lp.log_budget_coeffs[i - 1]
        cap = lp.log_caps[i - 1]
        remainder = log_budget - lC
        if cap >= remainder:
            lt = remainder          # budget binds: exhausted exactly
            log_budget = NEG_INF
        else:
            lt = cap
            spent = lC + cap
            # spent < log_budget in exact arithmetic; rounding may tie
            log_budget = log_sub(log_budget, spent) if spent < log_budget else NEG_INF
        if lt == NEG_INF:
            continue
        taken.append(math.exp(lC + math.log(i / n) + lt))
    gamma = math.fsum(taken)
    return min(max(gamma, 0.0), 1.0)


def greedy_vs_simplex_check(params: ModelParams, atol: float = _CHECK_ATOL) -> bool:
    """Cross-check the greedy fill against the generic simplex (n <= 30).

    The program is scaled per the solver contract: y_i = C(n, i) x_i puts
    every budget coefficient at 1 (the caps carry the combinatorics).
    """
    if params.n > SIMPLEX_CHECK_N_MAX:
        raise ValueError(f"simplex cross-check limited to n <= {SIMPLEX_CHECK_N_MAX}")
    lp = build_asymptotic_lp(params)
    n = lp.n
    obj = np.arange(1, n + 1) / n
    caps = np.array([math.exp(min(lc + lb, 700.0))
                     for lc, lb in zip(lp.log_caps, lp.log_budget_coeffs)])
    res = solve_lp(obj, A_ub=np.ones((1, n)), b_ub=np.array([1.0]), ub=caps)
    if res.status != OPTIMAL:
        return False
    return abs(res.objective - greedy_asymptotic_yield(params)) <= atol
