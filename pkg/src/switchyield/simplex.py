"""Dense two-phase primal simplex with variable upper bounds.

Deliberately self-contained so identical inputs give bit-identical runs:
Dantzig pricing with lowest-index tie-breaks, switching to Bland's rule
while a degenerate vertex persists (finite termination), and a Harris-style
ratio test that prefers large pivot elements among near-tied ratios. The
tableau is refactorized from the original matrix at a fixed cadence and at
every tentative optimum, which bounds accumulated pivot error; optimality
is only declared when it survives a refactorization. Callers are expected
to feed well-scaled data (coefficients around unity); an optional per-row
equilibration pass is applied on top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_RC_TOL = 1e-9          # reduced-cost optimality threshold (scaled objective)
_PIVOT_TOL = 1e-9       # smallest acceptable ratio-test denominator
_HARRIS_DELTA = 1e-11   # bound relaxation in the two-pass ratio test
_DEGEN_TOL = 1e-11      # step sizes below this count as degenerate
_FEAS_TOL = 1e-8        # phase-1 residual treated as infeasible above this
_BLAND_AFTER = 40       # consecutive degenerate pivots before Bland's rule
_REFACTOR_EVERY = 50    # pivots between refactorizations
_MAX_RESTARTS = 25      # optimality re-checks after refactorization

_LOWER, _UPPER, _BASIC = 0, 1, 2


class LPError(RuntimeError):
    """Numerical failure inside the solver (iteration cap, singular basis)."""


@dataclass(slots=True)
class SimplexResult:
    status: str
    objective: float
    x: np.ndarray | None


class _State:
    __slots__ = ("A", "b", "T", "basis", "status", "xB", "ub", "n", "m_ub",
                 "k", "allowed", "pivots")

    def __init__(self, A, b, basis, status, xB, ub, n, m_ub):
        self.A, self.b = A, b
        self.T = A.copy()
        self.basis, self.status = basis, status
        self.xB, self.ub = xB, ub
        self.n, self.m_ub, self.k = n, m_ub, A.shape[1]
        self.allowed = np.ones(A.shape[1], dtype=bool)
        self.pivots = 0

    def refactorize(self) -> None:
        """Rebuild T = B^{-1} A and the basic values from the original data."""
        B = self.A[:, self.basis]
        try:
            self.T = np.linalg.solve(B, self.A)
        except np.linalg.LinAlgError as exc:
            raise LPError("singular basis during refactorization") from exc
        rhs = self.b.copy()
        uppers = np.nonzero(self.status == _UPPER)[0]
        for j in uppers:
            rhs -= self.A[:, j] * self.ub[j]
        self.xB = np.linalg.solve(B, rhs)
        resid = float(np.max(np.abs(B @ self.xB - rhs), initial=0.0))
        if resid > 1e-6 * max(1.0, float(np.max(np.abs(rhs), initial=0.0))):
            raise LPError(f"numerically singular basis (residual {resid:.2e})")
        np.maximum(self.xB, 0.0, out=self.xB)

    def reduced_costs(self, c: np.ndarray) -> np.ndarray:
        return c - c[self.basis] @ self.T

    def solution(self) -> np.ndarray:
        x = np.zeros(self.k)
        at_upper = self.status == _UPPER
        x[at_upper] = self.ub[at_upper]
        x[self.basis] = self.xB
        return x


def solve_lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, ub=None,
             equilibrate=True, max_iter=None) -> SimplexResult:
    """Maximize c.x subject to A_ub x <= b_ub, A_eq x = b_eq, 0 <= x <= ub."""
    c = np.asarray(c, dtype=float)
    n = c.size
    A_ub = np.zeros((0, n)) if A_ub is None else np.asarray(A_ub, dtype=float)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float)
    A_eq = np.zeros((0, n)) if A_eq is None else np.asarray(A_eq, dtype=float)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float)
    ubv = np.full(n, np.inf) if ub is None else np.asarray(ub, dtype=float).copy()
    m_ub, m_eq = A_ub.shape[0], A_eq.shape[0]
    m = m_ub + m_eq

    A = np.vstack([A_ub, A_eq]) if m else np.zeros((0, n))
    b = np.concatenate([b_ub, b_eq])
    if equilibrate and m:
        # |b| joins the scale so rows whose rhs dwarfs their coefficients
        # (never-binding constraints) do not blow up to huge magnitudes
        scale = np.maximum(np.max(np.abs(A), axis=1), np.abs(b))
        scale[scale == 0.0] = 1.0
        A = A / scale[:, None]
        b = b / scale
    # Flip rows with negative rhs so the start point x = 0 has b >= 0.
    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0

    # Column layout: [structural | slacks for ub-rows | artificials].
    # A flipped <=-row became >=; its slack enters with coefficient -1 and
    # cannot seed the basis, so it gets an artificial like the eq-rows do.
    slack_cols = np.zeros((m, m_ub))
    for i in range(m_ub):
        slack_cols[i, i] = -1.0 if flip[i] else 1.0
    needs_art = [i for i in range(m) if i >= m_ub or flip[i]]
    art_cols = np.zeros((m, len(needs_art)))
    art_of_row = {}
    for j, i in enumerate(needs_art):
        art_cols[i, j] = 1.0
        art_of_row[i] = n + m_ub + j
    A_full = np.hstack([A, slack_cols, art_cols]) if m else np.zeros((0, n))
    k_total = A_full.shape[1]
    ubv = np.concatenate([ubv, np.full(m_ub + len(needs_art), np.inf)])

    cscale = np.max(np.abs(c)) or 1.0
    c2 = np.zeros(k_total)
    c2[:n] = c / cscale
    c1 = np.zeros(k_total)
    c1[n + m_ub:] = -1.0

    basis = np.array([art_of_row.get(i, n + i) for i in range(m)], dtype=int)
    status = np.full(k_total, _LOWER, dtype=np.int8)
    status[basis] = _BASIC
    state = _State(A_full, b, basis, status, b.copy(), ubv, n, m_ub)

    if max_iter is None:
        max_iter = 200 * (m + 1) + 20 * k_total + 10000

    if needs_art:
        unbounded = _optimize(state, c1, max_iter)
        if unbounded:
            raise LPError("phase-1 objective reported unbounded")
        if float(np.sum(np.abs(_art_values(state)))) > _FEAS_TOL:
            return SimplexResult(INFEASIBLE, math.nan, None)
        # Pin artificials at zero so phase 2 never moves them.
        state.ub[n + m_ub:] = 0.0
        state.allowed[n + m_ub:] = False
    unbounded = _optimize(state, c2, max_iter)
    if unbounded:
        return SimplexResult(UNBOUNDED, math.inf, None)

    x = state.solution()[:n]
    return SimplexResult(OPTIMAL, float(np.dot(c, x)), x)


def _art_values(state: _State) -> np.ndarray:
    cut = state.n + state.m_ub
    vals = np.zeros(state.k - cut)
    for i, bi in enumerate(state.basis):
        if bi >= cut:
            vals[bi - cut] = state.xB[i]
    return vals


def _optimize(state: _State, cvec: np.ndarray, max_iter: int) -> bool:
    """Iterate to a refactorization-stable optimum; True when unbounded."""
    for _ in range(_MAX_RESTARTS):
        unbounded = _iterate(state, cvec, max_iter)
        if unbounded:
            return True
        state.refactorize()
        if not _has_entering(state, state.reduced_costs(cvec)):
            return False
    raise LPError("optimality did not stabilize under refactorization")


def _eligibility(state: _State, zrow: np.ndarray) -> np.ndarray:
    at_lower = (state.status == _LOWER) & state.allowed & (state.ub > 0)
    at_upper = (state.status == _UPPER) & state.allowed
    return np.where(at_lower, zrow, np.where(at_upper, -zrow, -np.inf))


def _has_entering(state: _State, zrow: np.ndarray) -> bool:
    return bool(np.max(_eligibility(state, zrow), initial=-np.inf) > _RC_TOL)


def _iterate(state: _State, cvec: np.ndarray, max_iter: int) -> bool:
    """Run pivots until tentatively optimal (False) or unbounded (True)."""
    T, ub = state.T, state.ub
    zrow = state.reduced_costs(cvec)
    degen_run = 0
    bland = False
    for _ in range(max_iter):
        gain = _eligibility(state, zrow)
        if bland:
            elig = np.nonzero(gain > _RC_TOL)[0]
            if elig.size == 0:
                return False
            q = int(elig[0])
        else:
            q = int(np.argmax(gain))
            if gain[q] <= _RC_TOL:
                return False
        direction = 1.0 if state.status[q] == _LOWER else -1.0
        d = T[:, q] * direction

        # Harris ratio test, pass 1: the tightest step when every basic bound
        # is relaxed by the primal tolerance. Stepping to any row whose exact
        # ratio lies under this limit violates other rows by at most delta.
        t_bound = ub[q] if np.isfinite(ub[q]) else np.inf
        t_limit = t_bound
        for i in range(d.size):
            di = d[i]
            if di > _PIVOT_TOL:
                ti = (state.xB[i] + _HARRIS_DELTA) / di
            elif di < -_PIVOT_TOL:
                ub_b = ub[state.basis[i]]
                if not np.isfinite(ub_b):
                    continue
                ti = (ub_b - state.xB[i] + _HARRIS_DELTA) / (-di)
            else:
                continue
            if ti < t_limit:
                t_limit = ti
        if not np.isfinite(t_limit):
            return True  # unbounded direction
        t_limit = max(t_limit, 0.0)

        # Pass 2: among rows whose exact ratio fits under the limit, leave on
        # the largest pivot (Bland mode: lowest basic index).
        leave_row, leave_to_upper, best_piv, t_min = -1, False, 0.0, t_limit
        for i in range(d.size):
            di = d[i]
            if di > _PIVOT_TOL:
                ti = state.xB[i] / di
                to_upper = False
            elif di < -_PIVOT_TOL:
                ub_b = ub[state.basis[i]]
                if not np.isfinite(ub_b):
                    continue
                ti = (ub_b - state.xB[i]) / (-di)
                to_upper = True
            else:
                continue
            if ti > t_limit:
                continue
            t_min = min(t_min, ti)
            if bland:
                if leave_row < 0 or state.basis[i] < state.basis[leave_row]:
                    leave_row, leave_to_upper, best_piv = i, to_upper, abs(di)
            elif abs(di) > best_piv:
                leave_row, leave_to_upper, best_piv = i, to_upper, abs(di)

        degenerate = max(t_min, 0.0) <= _DEGEN_TOL
        if degenerate:
            degen_run += 1
            if degen_run >= _BLAND_AFTER:
                bland = True
        else:
            degen_run = 0
            bland = False

        if leave_row < 0:
            # Bound flip: q jumps to its other bound, basis unchanged.
            state.xB -= t_bound * d
            np.maximum(state.xB, 0.0, out=state.xB)
            state.status[q] = _UPPER if state.status[q] == _LOWER else _LOWER
            continue

        p = leave_row
        t_star = state.xB[p] / d[p] if d[p] > 0 else \
            (ub[state.basis[p]] - state.xB[p]) / (-d[p])
        t_star = max(t_star, 0.0)
        state.xB -= t_star * d
        entering_value = (0.0 if direction > 0 else ub[q]) + direction * t_star
        leaving = state.basis[p]
        state.status[leaving] = _UPPER if leave_to_upper else _LOWER
        piv = T[p, q]
        T[p] /= piv
        col = T[:, q].copy()
        col[p] = 0.0
        T -= np.outer(col, T[p])
        if zrow[q] != 0.0:
            zrow -= zrow[q] * T[p]
        state.basis[p] = q
        state.status[q] = _BASIC
        state.xB[p] = entering_value
        np.maximum(state.xB, 0.0, out=state.xB)
        state.pivots += 1
        if state.pivots % _REFACTOR_EVERY == 0:
            state.refactorize()
            T = state.T
            zrow = state.reduced_costs(cvec)
    raise LPError("simplex iteration limit exceeded")
