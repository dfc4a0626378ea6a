"""Symmetry-reduced Gibbs-stochastic linear program and full-matrix oracles.

The correlated optimum over n switches is a linear program over the entries
of a stochastic matrix G fixing the Gibbs population vector. Permutation
symmetry of the yield collapses G to class-to-class transfer rates:

  x_{ij}: from the C(n, j-1) levels with energy (j-1) w (j = 1..n+1)
          to each of the C(n, i) levels with energy i delta (i = 1..n);
  z_i:    from the fixed column class (energy m delta, default m = 1),
          eliminated through the Gibbs fixed-point row;
  g_i:    from a yield row's own energy class (the diagonal dump, i != m).

The g_i carry no objective weight but are required for feasibility: with
them forced to zero the program has no feasible point for n >= 3 at small
delta, because the single fixed column cannot absorb the Gibbs weight the
yield rows must draw (the fixed-column mass cap binds). A row's own class
supplies exactly the e^{-i delta} of absorbable weight the row can need and
its column mass is contended by nothing else, so the diagonal dump is as
strong as dumping into every empty class; both reproduce the full-matrix
optimum exactly (validated against the unreduced oracle).

Every variable is rescaled by its constraint-implied upper bound so all
matrix coefficients land in [0, 1]; without this, rows mixing e^{-(j-1)w}
coefficients across j are numerically void at any absolute tolerance.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .logdomain import NEG_INF, log_comb, log_sum
from .simplex import INFEASIBLE, OPTIMAL, SimplexResult, solve_lp
from .states import ModelParams
from . import curves

logger = logging.getLogger(__name__)

N_MAX = 200
BRUTE_N_MAX = 3
_TRUNCATE_LOG = math.log(1e-300)
_DROP_LOG = math.log(1e-250)
_CHECK_ATOL = 1e-9
_ROW_FEAS_ATOL = 5e-8   # pivot-tolerance drift floor of the dense simplex


@dataclass(frozen=True)
class SymmetricLP:
    """The reduced program in scaled variables (every column in [0, 1]).

    ``x_pairs[k] = (i, j)`` and ``g_pairs[k] = (i, kcls)`` name the columns;
    ``scale_logs`` holds ln of the per-variable unscaling factors. Rows of
    ``a_ub`` are, in order: n rows z_i >= 0, n rows z_i <= 1, n+1 column-mass
    rows for the initial classes, column-mass rows for each dump class, and
    the fixed-column mass row (z-mass).
    """

    params: ModelParams
    fixed_column: int
    x_pairs: tuple[tuple[int, int], ...]
    g_pairs: tuple[tuple[int, int], ...]
    scale_logs: tuple[float, ...]
    objective: np.ndarray
    a_ub: np.ndarray
    b_ub: np.ndarray
    truncated: tuple[tuple[int, int], ...] = field(default=())

    @property
    def n_structural(self) -> int:
        return len(self.x_pairs)


@dataclass(frozen=True)
class LPSolution:
    status: str
    objective_value: float
    x: dict[tuple[int, int], float]
    p: list[float]
    z: list[float]
    g: dict[tuple[int, int], float]

    def to_json_dict(self, params: ModelParams) -> dict:
        return {
            "n": params.n,
            "delta": params.delta,
            "w": params.w,
            "q": params.q,
            "status": self.status,
            "gamma": self.objective_value,
            "x": [{"i": i, "j": j, "value": v} for (i, j), v in sorted(self.x.items())],
            "p": list(self.p),
            "z": list(self.z),
        }

    def to_json(self, params: ModelParams) -> str:
        return json.dumps(self.to_json_dict(params))


def build_symmetric_lp(params: ModelParams, fixed_column: int = 1) -> SymmetricLP:
    """Assemble the reduced program; coefficients below 1e-300 are truncated
    (logged), and variables whose implied bound underflows are dropped."""
    n, d, w, q = params.n, params.delta, params.w, params.q
    if not 1 <= n <= N_MAX:
        raise ValueError(f"n={n} outside [1, {N_MAX}]")
    if not 1 <= fixed_column <= n:
        raise ValueError(f"fixed column class {fixed_column} outside [1, {n}]")
    m = fixed_column
    logC = [log_comb(n, t) for t in range(n + 1)]
    lq = math.log(q) if q > 0 else NEG_INF
    l1q = math.log(1 - q) if q < 1 else NEG_INF

    x_pairs, g_pairs, scale_logs, obj_logs = [], [], [], []
    truncated = []
    for i in range(1, n + 1):
        for j in range(1, n + 2):
            # implied bound: min(box, column mass, Gibbs row budget)
            s = min(0.0, -logC[i], -i * d + (j - 1) * w - logC[j - 1])
            if s <= _DROP_LOG:
                truncated.append((i, j))
                continue
            x_pairs.append((i, j))
            scale_logs.append(s)
            if j - 1 == 0:
                lmass = n * l1q
            elif j - 1 == n:
                lmass = n * lq
            elif 0 < q < 1:
                lmass = (j - 1) * lq + (n - (j - 1)) * l1q
            else:
                lmass = NEG_INF
            obj_logs.append(logC[i] + math.log(i / n) + logC[j - 1] + lmass + s)
    for i in range(1, n + 1):
        if i == m:
            continue  # the fixed column class is the row's own class here
        s = min(0.0, -logC[i])
        if s <= _DROP_LOG:
            continue
        g_pairs.append((i, i))
        scale_logs.append(s)
        obj_logs.append(NEG_INF)
    nv = len(scale_logs)
    nx = len(x_pairs)
    objective = np.array([0.0 if lo <= _TRUNCATE_LOG else math.exp(lo) for lo in obj_logs])

    dump_classes = sorted({k for _, k in g_pairs})
    dump_row = {k: idx for idx, k in enumerate(dump_classes)}
    n_rows = 2 * n + (n + 1) + len(dump_classes) + 1
    a = np.zeros((n_rows, nv))
    b = np.ones(n_rows)

    def coeff(log_value: float) -> float:
        return 0.0 if log_value <= _TRUNCATE_LOG else math.exp(log_value)

    zmass_terms = []
    for v in range(nv):
        s = scale_logs[v]
        if v < nx:
            i, j = x_pairs[v]
            lrow = logC[j - 1] - (j - 1) * w  # weight drawn from the j-class
        else:
            i, k = g_pairs[v - nx]
            lrow = logC[k] - k * d
        # z_i >= 0, scaled by e^{i delta}: coefficients <= 1 by construction
        a[i - 1, v] = coeff(lrow + i * d + s)
        # z_i <= 1: -(weight drawn) <= C(n,m) e^{-m delta} - e^{-i delta}
        a[n + i - 1, v] = -coeff(lrow + s)
        if v < nx:
            a[2 * n + j - 1, v] = coeff(logC[i] + s)          # column mass, class j
        else:
            a[3 * n + 1 + dump_row[k], v] = coeff(logC[i] + s)  # column mass, dump k
        zmass_terms.append((v, logC[i] + lrow + s))

    for i in range(1, n + 1):
        b[n + i - 1] = math.exp(logC[m] - m * d) - math.exp(-i * d)

    zmass = n_rows - 1
    for v, lo in zmass_terms:
        a[zmass, v] = -coeff(lo)
    log_s_fixed = log_sum(logC[i] - i * d for i in range(1, n + 1))
    b[zmass] = math.exp(logC[m] - m * d) - math.exp(log_s_fixed)
    row_scale = np.max(np.abs(a[zmass]))
    if row_scale > 0:
        a[zmass] /= row_scale
        b[zmass] /= row_scale

    if truncated:
        logger.info("symmetric LP n=%d delta=%.6g: dropped %d transfer variables "
                    "with implied bounds below 1e-250", n, d, len(truncated))
    return SymmetricLP(
        params=params, fixed_column=m,
        x_pairs=tuple(x_pairs), g_pairs=tuple(g_pairs),
        scale_logs=tuple(scale_logs), objective=objective,
        a_ub=a, b_ub=b, truncated=tuple(truncated),
    )


def solve_symmetric_lp(lp: SymmetricLP) -> LPSolution:
    """Solve the reduced program and reconstruct per-level populations."""
    n, d, w, q = lp.params.n, lp.params.delta, lp.params.w, lp.params.q
    res = solve_lp(lp.objective, A_ub=lp.a_ub, b_ub=lp.b_ub,
                   ub=np.ones(lp.objective.size), equilibrate=True)
    if res.status != OPTIMAL:
        assert res.status == INFEASIBLE, "bounded objective cannot be unbounded"
        return LPSolution(res.status, math.nan, {}, [], [], {})
    logC = [log_comb(n, t) for t in range(n + 1)]
    lq = math.log(q) if q > 0 else NEG_INF
    l1q = math.log(1 - q) if q < 1 else NEG_INF
    nx = len(lp.x_pairs)
    xvals = {}
    gvals = {}
    for v, val in enumerate(res.x):
        lv = math.log(val) + lp.scale_logs[v] if val > 0 else NEG_INF
        if v < nx:
            xvals[lp.x_pairs[v]] = math.exp(lv) if lv > _TRUNCATE_LOG else 0.0
        else:
            gvals[lp.g_pairs[v - nx]] = math.exp(lv) if lv > _TRUNCATE_LOG else 0.0

    p = []
    for i in range(1, n + 1):
        terms = []
        for v in range(nx):
            ii, j = lp.x_pairs[v]
            if ii != i or res.x[v] <= 0:
                continue
            if j - 1 == 0:
                lmass = n * l1q
            elif j - 1 == n:
                lmass = n * lq
            elif 0 < q < 1:
                lmass = (j - 1) * lq + (n - (j - 1)) * l1q
            else:
                lmass = NEG_INF
            lo = logC[j - 1] + lmass + lp.scale_logs[v] + math.log(res.x[v])
            if lo > _TRUNCATE_LOG:
                terms.append(math.exp(lo))
        p.append(math.fsum(terms))

    m = lp.fixed_column
    z = []
    for i in range(1, n + 1):
        drawn = []
        for v in range(len(res.x)):
            if res.x[v] <= 0:
                continue
            if v < nx:
                ii, j = lp.x_pairs[v]
                lrow = logC[j - 1] - (j - 1) * w
            else:
                ii, k = lp.g_pairs[v - nx]
                lrow = logC[k] - k * d
            if ii != i:
                continue
            lo = lrow + lp.scale_logs[v] + math.log(res.x[v])
            if lo > _TRUNCATE_LOG:
                drawn.append(math.exp(lo))
        z_i = math.exp(m * d - logC[m]) * (math.exp(-i * d) - math.fsum(drawn))
        z.append(z_i)

    _check_solution(lp, xvals, gvals, z, p, res)
    from .states import yield_from_populations
    gamma = yield_from_populations(p, n)
    assert abs(gamma - res.objective) <= _CHECK_ATOL, (gamma, res.objective)
    return LPSolution(OPTIMAL, gamma, xvals, p, z, gvals)


def _check_solution(lp: SymmetricLP, xvals, gvals, z, p, res: SimplexResult) -> None:
    n = lp.params.n
    logC = [log_comb(n, t) for t in range(n + 1)]
    for (i, j), v in xvals.items():
        assert -_CHECK_ATOL <= v <= 1 + _CHECK_ATOL, f"x[{i},{j}]={v}"
    for (i, k), v in gvals.items():
        assert -_CHECK_ATOL <= v <= 1 + _CHECK_ATOL, f"g[{i},{k}]={v}"
    for i, zi in enumerate(z, start=1):
        # the reconstructed z_i carry solver noise amplified by e^{m d}/C(n,m)
        slack = _CHECK_ATOL * math.exp(lp.fixed_column * lp.params.delta - logC[lp.fixed_column])
        assert -_CHECK_ATOL - slack <= zi <= 1 + _CHECK_ATOL + slack, f"z[{i}]={zi}"
    for j in range(1, n + 2):
        mass = math.fsum(math.exp(logC[i] + math.log(v)) for (i, jj), v in xvals.items()
                         if jj == j and v > 0 and logC[i] + math.log(v) > _TRUNCATE_LOG)
        assert mass <= 1 + _CHECK_ATOL, f"column {j} mass {mass}"
    # the z-box and fixed-column mass rows live in the LP in well-scaled form;
    # checking them through the reconstructed z_i would multiply cancellation
    # noise by C(n, i), so they are verified as row residuals instead
    row_violation = float(np.max(lp.a_ub @ res.x - lp.b_ub, initial=0.0))
    assert row_violation <= _ROW_FEAS_ATOL, f"row violation {row_violation}"


def max_correlated_yield(params: ModelParams,
                         fixed_column: int = 1) -> tuple[float, list[float]]:
    """Optimal yield with correlations allowed, plus the per-level populations."""
    sol = solve_symmetric_lp(build_symmetric_lp(params, fixed_column))
    if sol.status != OPTIMAL:
        raise RuntimeError(f"symmetric LP terminated with status {sol.status}")
    return sol.objective_value, sol.p


def solve_full_gibbs_lp(log_gibbs_weights: list[float], initial_pops: list[float],
                        yield_weights: list[float]) -> tuple[float, list[float]]:
    """Unreduced program over all matrix entries; the oracle for reductions.

    Maximizes sum_r yield_weights[r] * (G p)_r over stochastic G with
    G p_gibbs = p_gibbs. Entry (r, c) is rescaled by its Gibbs-implied bound
    min(1, gw_r / gw_c); entries whose bound underflows are dropped (they
    could carry at most 1e-250 of population).
    """
    L = len(log_gibbs_weights)
    if not (len(initial_pops) == len(yield_weights) == L):
        raise ValueError("level arrays must share one length")
    keep: list[tuple[int, int]] = []
    s_logs: list[float] = []
    for r in range(L):
        gr = log_gibbs_weights[r]
        for c in range(L):
            s = min(0.0, gr - log_gibbs_weights[c])
            if s > _DROP_LOG:
                keep.append((r, c))
                s_logs.append(s)
    nv = len(keep)
    obj = np.zeros(nv)
    a_eq = np.zeros((2 * L, nv))
    b_eq = np.ones(2 * L)
    for v, ((r, c), s) in enumerate(zip(keep, s_logs)):
        sv = math.exp(s)
        obj[v] = yield_weights[r] * initial_pops[c] * sv
        a_eq[c, v] = sv                                              # column sum
        a_eq[L + r, v] = math.exp(min(0.0, log_gibbs_weights[c] - log_gibbs_weights[r]))
    res = solve_lp(obj, A_eq=a_eq, b_eq=b_eq, ub=np.ones(nv), equilibrate=False)
    if res.status != OPTIMAL:
        raise RuntimeError(f"full Gibbs LP terminated with status {res.status}")
    final = [0.0] * L
    for v, ((r, c), s) in enumerate(zip(keep, s_logs)):
        if res.x[v] > 0 and initial_pops[c] > 0:
            final[r] += math.exp(s) * res.x[v] * initial_pops[c]
    return res.objective, final


def _three_level_product_levels(params: ModelParams):
    """All 3^n basis levels of the n-switch system (trans, cis, excited)."""
    n, d, w, q = params.n, params.delta, params.w, params.q
    energies_1 = (0.0, d, w)
    log_gw, pops, weights = [], [], []
    for code in range(3 ** n):
        digits = []
        rem = code
        for _ in range(n):
            digits.append(rem % 3)
            rem //= 3
        energy = sum(energies_1[t] for t in digits)
        n_cis = digits.count(1)
        n_exc = digits.count(2)
        log_gw.append(-energy)
        weights.append(n_cis / n)
        pops.append(0.0 if n_cis else (q ** n_exc) * ((1 - q) ** (n - n_exc)))
    return log_gw, pops, weights


def brute_force_full_lp(params: ModelParams) -> float:
    """Optimum of the unreduced program on all 3^n levels (n <= 3)."""
    if params.n > BRUTE_N_MAX:
        raise ValueError(f"brute force limited to n <= {BRUTE_N_MAX}")
    log_gw, pops, weights = _three_level_product_levels(params)
    gamma, _ = solve_full_gibbs_lp(log_gw, pops, weights)
    return gamma


def max_uncorrelated_yield_lp_check(params: ModelParams) -> float:
    """The uncorrelated optimum, co-located here so sweeps report both bounds
    from one call site; delegates to the curve bisection unchanged."""
    return curves.max_uncorrelated_yield(params)
