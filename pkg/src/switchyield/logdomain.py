"""Log-domain arithmetic for nonnegative numbers spanning hundreds of decades.

Populations, Boltzmann weights and binomial degeneracies in multi-switch
ensembles reach magnitudes like e^{-1500}, far below the smallest double.
Everything here stores ln(magnitude) and a zero flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

NEG_INF = -math.inf

# math.comb is exact but slow on very large arguments; lgamma is accurate to
# ~1e-10 absolute in the log for n up to 1e6, which is far below every
# tolerance used downstream.
_EXACT_COMB_LIMIT = 2000


def log_comb(n: int, k: int) -> float:
    """ln C(n, k); exact for small n, Stirling-free lgamma beyond."""
    if k < 0 or k > n:
        raise ValueError(f"k={k} out of range for n={n}")
    if k == 0 or k == n:
        return 0.0
    if n <= _EXACT_COMB_LIMIT:
        return math.log(math.comb(n, k))
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def log_add(la: float, lb: float) -> float:
    """ln(e^la + e^lb)."""
    if la == NEG_INF:
        return lb
    if lb == NEG_INF:
        return la
    if la < lb:
        la, lb = lb, la
    return la + math.log1p(math.exp(lb - la))


def log_sub(la: float, lb: float) -> float:
    """ln(e^la - e^lb) for la >= lb; equal arguments give -inf (exact zero)."""
    if lb == NEG_INF:
        return la
    if lb > la:
        raise ValueError(f"log_sub would be negative: {la} < {lb}")
    r = math.exp(lb - la)
    if r >= 1.0:
        return NEG_INF
    return la + math.log1p(-r)


def log_sum(values) -> float:
    """ln(sum e^v) over an iterable, shifted by the running maximum."""
    acc = NEG_INF
    for v in values:
        acc = log_add(acc, v)
    return acc


@dataclass(frozen=True, slots=True)
class LogScalar:
    """A nonnegative real held as ln(magnitude); log == -inf encodes zero."""

    log: float

    @staticmethod
    def from_linear(x: float) -> "LogScalar":
        if x < 0:
            raise ValueError(f"LogScalar must be nonnegative, got {x}")
        return LogScalar(math.log(x) if x > 0 else NEG_INF)

    @staticmethod
    def zero() -> "LogScalar":
        return LogScalar(NEG_INF)

    @staticmethod
    def one() -> "LogScalar":
        return LogScalar(0.0)

    @property
    def is_zero(self) -> bool:
        return self.log == NEG_INF

    def to_linear(self) -> float:
        """May underflow to 0.0 or overflow to inf; callers needing the exact
        magnitude should stay in the log domain."""
        if self.is_zero:
            return 0.0
        try:
            return math.exp(self.log)
        except OverflowError:
            return math.inf

    def __add__(self, other: "LogScalar") -> "LogScalar":
        return LogScalar(log_add(self.log, other.log))

    def __sub__(self, other: "LogScalar") -> "LogScalar":
        return LogScalar(log_sub(self.log, other.log))

    def __mul__(self, other: "LogScalar") -> "LogScalar":
        if self.is_zero or other.is_zero:
            return LogScalar(NEG_INF)
        return LogScalar(self.log + other.log)

    def __truediv__(self, other: "LogScalar") -> "LogScalar":
        if other.is_zero:
            raise ZeroDivisionError("LogScalar division by zero")
        if self.is_zero:
            return LogScalar(NEG_INF)
        return LogScalar(self.log - other.log)

    def __lt__(self, other: "LogScalar") -> bool:
        return self.log < other.log

    def __le__(self, other: "LogScalar") -> bool:
        return self.log <= other.log

    def __gt__(self, other: "LogScalar") -> bool:
        return self.log > other.log

    def __ge__(self, other: "LogScalar") -> bool:
        return self.log >= other.log
