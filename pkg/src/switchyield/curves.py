"""Thermomajorization curves, the reachability predicate, and yield bisection.

A diagonal state maps to a concave piecewise-linear curve: levels sorted by
p * e^{E} descending, elbows at cumulative (Gibbs weight, population). State
rho can be driven arbitrarily close to sigma by a thermal operation iff
rho's curve lies nowhere below sigma's.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .logdomain import NEG_INF, LogScalar, log_add, log_sub
from .states import DiagonalState, ModelParams, tensor_power_grouped, uncorrelated_final_state

CURVE_RTOL = 1e-11
BISECT_TOL = 1e-10


def high_excitation_threshold(w: float) -> float:
    """Excitation above which the excited level leads the beta-order: 1/(1+e^w)."""
    if not w > 0:
        raise ValueError(f"w must be positive, got {w}")
    try:
        return 1.0 / (1.0 + math.exp(w))
    except OverflowError:
        return 0.0


@dataclass(frozen=True, slots=True)
class BetaOrder:
    """Group indices sorted by p*e^{E} descending; ties by (energy, index)."""

    permutation: tuple[int, ...]
    log_keys: tuple[float, ...]


def beta_order(state: DiagonalState) -> BetaOrder:
    keyed = []
    for idx, grp in enumerate(state.groups):
        log_key = NEG_INF if grp.population.is_zero else grp.population.log + grp.energy
        keyed.append((-log_key, grp.energy, idx))
    keyed.sort()
    perm = tuple(idx for _, _, idx in keyed)
    return BetaOrder(perm, tuple(-k for k, _, _ in keyed))


@dataclass(frozen=True, slots=True)
class ThermomajorizationCurve:
    """Elbows (x, y) with x cumulative unnormalized Gibbs weight, y cumulative
    population, both log-domain. Starts implicitly at (0, 0); concave.

    ``slopes[k]`` is the exact per-segment slope (the beta-ordering key of the
    segment's groups) and ``deficits[k]`` is 1 - y at elbow k computed as a
    suffix mass sum, so the saturated tail of the curve keeps full relative
    precision where 1 - y underflows any linear representation.
    """

    elbows: tuple[tuple[LogScalar, LogScalar], ...]
    slopes: tuple[float, ...]
    deficits: tuple[float, ...]

    @property
    def log_z_total(self) -> float:
        return self.elbows[-1][0].log

    def _segment(self, x: LogScalar) -> int:
        """Index of the first elbow with x_elbow >= x."""
        lo, hi = 0, len(self.elbows)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.elbows[mid][0] < x:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def evaluate(self, x: LogScalar) -> LogScalar:
        """Curve height at x (clamped to the final height past the last elbow)."""
        if x.is_zero:
            return LogScalar.zero()
        k = self._segment(x)
        if k == len(self.elbows):
            return self.elbows[-1][1]
        x0 = LogScalar.zero() if k == 0 else self.elbows[k - 1][0]
        y0 = LogScalar.zero() if k == 0 else self.elbows[k - 1][1]
        if self.slopes[k] == NEG_INF:
            return y0
        return LogScalar(log_add(y0.log, self.slopes[k] + log_sub(x.log, x0.log)))

    def deficit(self, x: LogScalar) -> LogScalar:
        """1 - f(x) as a log-domain value, exact in the saturated tail."""
        if x.is_zero:
            return LogScalar.one()
        k = self._segment(x)
        if k == len(self.elbows):
            return LogScalar(self.deficits[-1])
        x1 = self.elbows[k][0]
        base = self.deficits[k]
        if self.slopes[k] == NEG_INF:
            return LogScalar(base)
        if x.log >= x1.log:
            return LogScalar(base)
        return LogScalar(log_add(base, self.slopes[k] + log_sub(x1.log, x.log)))


def build_curve(state: DiagonalState) -> ThermomajorizationCurve:
    """Cumulate (Gibbs weight, population) along the beta-order.

    Groups are single segments (identical keys inside a group); consecutive
    groups with exactly tied keys merge into one segment.
    """
    order = beta_order(state)
    elbows: list[tuple[LogScalar, LogScalar]] = []
    slopes: list[float] = []
    suffix: list[float] = []
    acc_x, acc_y = NEG_INF, NEG_INF
    prev_key = None
    for rank, idx in enumerate(order.permutation):
        grp = state.groups[idx]
        key = order.log_keys[rank]
        acc_x = log_add(acc_x, grp.log_gibbs_weight)
        acc_y = log_add(acc_y, grp.log_mass)
        if prev_key is not None and key == prev_key and elbows:
            elbows[-1] = (LogScalar(acc_x), LogScalar(acc_y))
            suffix[-1] = log_add(suffix[-1], grp.log_mass)
        else:
            elbows.append((LogScalar(acc_x), LogScalar(acc_y)))
            slopes.append(key)
            suffix.append(grp.log_mass)
        prev_key = key
    # deficits[k] = sum of masses of all segments after k (exact suffix sums)
    deficits = [NEG_INF] * len(elbows)
    acc = NEG_INF
    for k in range(len(elbows) - 1, -1, -1):
        deficits[k] = acc
        acc = log_add(acc, suffix[k])
    return ThermomajorizationCurve(tuple(elbows), tuple(slopes), tuple(deficits))


def thermomajorizes(rho_curve: ThermomajorizationCurve,
                    sigma_curve: ThermomajorizationCurve,
                    rel_tol: float = CURVE_RTOL) -> bool:
    """True iff f_rho(x) >= f_sigma(x) up to relative slack at every elbow of
    sigma (sufficient everywhere: f_rho concave, f_sigma piecewise linear).

    Each comparison runs in population space and in deficit space (1 - f);
    near saturation only the deficit comparison carries information, because
    the binding constraints there differ from 1 by amounts far below any
    linear floating-point resolution.
    """
    if abs(rho_curve.log_z_total - sigma_curve.log_z_total) > 1e-9:
        raise ValueError("curves live over different total Gibbs weights")
    for k, (x, y) in enumerate(sigma_curve.elbows):
        # population space: violation ratio (y_sigma / f_rho) as a log difference;
        # trustworthy away from saturation, where log-accumulation noise (~1e-15
        # absolute in the log) is far below rel_tol
        fx = rho_curve.evaluate(x)
        if not y.is_zero and (fx.is_zero or y.log - fx.log > rel_tol):
            return False
        # deficit space: sharp at saturation, where 1 - y is held exactly as a
        # suffix mass sum far below linear floating-point resolution
        d_sigma = sigma_curve.deficits[k]
        d_rho = rho_curve.deficit(x)
        if not d_rho.is_zero and (d_sigma == NEG_INF or d_rho.log - d_sigma > rel_tol):
            return False
    return True


def reaches_uncorrelated(params: ModelParams, gamma: float,
                         rel_tol: float = CURVE_RTOL) -> bool:
    """Can the product initial state reach the gamma product final state?"""
    rho_curve = build_curve(tensor_power_grouped(params))
    sigma_curve = build_curve(uncorrelated_final_state(params, gamma))
    return thermomajorizes(rho_curve, sigma_curve, rel_tol)


def max_yield_against_curve(rho_curve: ThermomajorizationCurve,
                            params: ModelParams, tol: float = BISECT_TOL) -> float:
    """Largest gamma whose product target sigma(gamma)^{x n} sits under
    ``rho_curve``, by bisection.

    Feasibility is monotone decreasing above the two-level Gibbs population
    gamma_g = e^{-delta}/(1+e^{-delta}) (a single-molecule protocol maps any
    reachable sigma(gamma) onto sigma(gamma') for gamma_g <= gamma' <= gamma),
    and sigma(gamma_g)^{x n} is always reachable for delta <= w. The returned
    gamma is feasible and gamma + 10 tol is not (unless gamma is 1).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if params.delta > params.w:
        raise ValueError("delta must not exceed w")

    def feasible(gamma: float) -> bool:
        sigma_curve = build_curve(uncorrelated_final_state(params, gamma))
        return thermomajorizes(rho_curve, sigma_curve)

    lo = math.exp(-params.delta) / (1.0 + math.exp(-params.delta))
    if not feasible(lo):
        warnings.warn("no feasible uncorrelated target found; reporting 0")
        return 0.0
    if feasible(1.0):
        return 1.0
    hi = 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    if lo + 10 * tol <= 1.0:
        assert not feasible(lo + 10 * tol), "feasibility not monotone at the boundary"
    return lo


def max_uncorrelated_yield(params: ModelParams, tol: float = BISECT_TOL) -> float:
    """Largest gamma with rho^{x n} reaching the gamma product state."""
    rho_curve = build_curve(tensor_power_grouped(params))
    return max_yield_against_curve(rho_curve, params, tol)


def single_molecule_max_yield(delta: float, q: float, w: float,
                              tol: float = BISECT_TOL) -> float:
    """Optimal single-switch yield (bisection on the n = 1 curve pair)."""
    return max_uncorrelated_yield(ModelParams(delta=delta, w=w, q=q, n=1), tol)
