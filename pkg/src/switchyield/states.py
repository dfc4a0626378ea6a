"""Energy-level structures and diagonal states of molecular-switch ensembles.

Conventions: inverse temperature is fixed to 1, all energies are in units of
k_B T. A single switch is a three-level system: trans ground state at energy
0, cis ground state at energy ``delta``, excited state at energy ``w``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .logdomain import NEG_INF, LogScalar, log_comb, log_sum

NORMALIZATION_RTOL = 1e-12


@dataclass(frozen=True, slots=True)
class ModelParams:
    """Ensemble description: energies (k_B T units), excitation, switch count."""

    delta: float
    w: float
    q: float
    n: int

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if not self.w > 0:
            raise ValueError(f"w must be positive, got {self.w}")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"q must be in [0, 1], got {self.q}")
        if self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")


@dataclass(frozen=True, slots=True)
class LevelGroup:
    """A block of degenerate levels sharing one energy and one population.

    ``population`` is per level; the group carries ``degeneracy`` copies.
    ``log_degeneracy`` is authoritative (exact ``degeneracy`` kept when it
    fits an int for cheap exact checks at small n).
    """

    energy: float
    log_degeneracy: float
    population: LogScalar
    label: str
    degeneracy: int | None = field(default=None)

    def __post_init__(self):
        if self.log_degeneracy < 0:
            raise ValueError("degeneracy must be >= 1")
        if self.degeneracy is not None and self.degeneracy < 1:
            raise ValueError("degeneracy must be >= 1")

    @staticmethod
    def make(energy: float, degeneracy: int, population: LogScalar, label: str) -> "LevelGroup":
        return LevelGroup(energy, math.log(degeneracy), population, label, degeneracy)

    @property
    def log_mass(self) -> float:
        """ln(degeneracy * population): total probability in the group."""
        if self.population.is_zero:
            return NEG_INF
        return self.log_degeneracy + self.population.log

    @property
    def log_gibbs_weight(self) -> float:
        """ln(degeneracy * e^{-energy}): unnormalized Gibbs weight."""
        return self.log_degeneracy - self.energy


@dataclass(frozen=True, slots=True)
class DiagonalState:
    """An energy-diagonal state as an ordered list of degenerate groups.

    (energy, label) pairs are unique; total population must be 1 within
    NORMALIZATION_RTOL.
    """

    groups: tuple[LevelGroup, ...]

    def __post_init__(self):
        seen = set()
        for grp in self.groups:
            key = (grp.energy, grp.label)
            if key in seen:
                raise ValueError(f"duplicate level group {key}")
            seen.add(key)
        total = log_sum(g.log_mass for g in self.groups)
        if abs(total) > NORMALIZATION_RTOL:
            raise ValueError(f"state not normalized: total mass exp({total})")

    @property
    def total_levels(self) -> int | None:
        """Exact level count when every group carries an exact degeneracy."""
        if any(g.degeneracy is None for g in self.groups):
            return None
        return sum(g.degeneracy for g in self.groups)

    @property
    def log_total_gibbs_weight(self) -> float:
        return log_sum(g.log_gibbs_weight for g in self.groups)

    def populations(self) -> list[float]:
        return [g.population.to_linear() for g in self.groups]


def single_molecule_state(params: ModelParams) -> DiagonalState:
    """(1-q) on the trans ground level, q on the excited level."""
    q = params.q
    return DiagonalState((
        LevelGroup.make(0.0, 1, LogScalar.from_linear(1 - q), "trans"),
        LevelGroup.make(params.delta, 1, LogScalar.zero(), "cis"),
        LevelGroup.make(params.w, 1, LogScalar.from_linear(q), "excited"),
    ))


def tensor_power_grouped(params: ModelParams) -> DiagonalState:
    """n-fold product of the single-switch state, grouped by excitation count.

    Populated groups sit at energies k*w (k excited switches), per-level
    population q^k (1-q)^{n-k}, degeneracy C(n,k). Zero-population target
    groups at energies i*delta (i switched) are included so final states and
    curve comparisons share one level structure.
    """
    n, q, w, d = params.n, params.q, params.w, params.delta
    lq = math.log(q) if q > 0 else NEG_INF
    l1q = math.log(1 - q) if q < 1 else NEG_INF
    groups = []
    for k in range(n + 1):
        if (q > 0 or k == 0) and (q < 1 or k == n):
            lp = k * lq + (n - k) * l1q
            if k == 0:
                lp = n * l1q
            elif k == n:
                lp = n * lq
        else:
            lp = NEG_INF
        groups.append(LevelGroup(
            k * w, log_comb(n, k), LogScalar(lp), f"{k} excited of {n}",
            math.comb(n, k) if n <= 300 else None,
        ))
    for i in range(1, n + 1):
        groups.append(LevelGroup(
            i * d, log_comb(n, i), LogScalar.zero(), f"{i} switched of {n}",
            math.comb(n, i) if n <= 300 else None,
        ))
    return DiagonalState(tuple(groups))


def uncorrelated_final_state(params: ModelParams, gamma: float) -> DiagonalState:
    """[gamma |cis> + (1-gamma) |trans>]^{x n} on the same grouped structure."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must be in [0, 1], got {gamma}")
    n, w, d = params.n, params.w, params.delta
    lg = math.log(gamma) if gamma > 0 else NEG_INF
    l1g = math.log(1 - gamma) if gamma < 1 else NEG_INF
    groups = []
    for i in range(n + 1):
        if (gamma > 0 or i == 0) and (gamma < 1 or i == n):
            lp = (n * l1g if i == 0 else n * lg if i == n else i * lg + (n - i) * l1g)
        else:
            lp = NEG_INF
        label = f"{i} switched of {n}" if i > 0 else f"0 excited of {n}"
        energy = i * d if i > 0 else 0.0
        groups.append(LevelGroup(
            energy, log_comb(n, i), LogScalar(lp), label,
            math.comb(n, i) if n <= 300 else None,
        ))
    for k in range(1, n + 1):
        groups.append(LevelGroup(
            k * w, log_comb(n, k), LogScalar.zero(), f"{k} excited of {n}",
            math.comb(n, k) if n <= 300 else None,
        ))
    return DiagonalState(tuple(groups))


def symmetric_final_state(params: ModelParams, pops: list[float]) -> DiagonalState:
    """Symmetric diagonal final state from per-level populations.

    ``pops[i]`` is the population of each level with i switched molecules,
    i = 0..n (the support of the correlated final states). Must normalize:
    sum C(n,i) pops[i] = 1.
    """
    n, w, d = params.n, params.w, params.delta
    if len(pops) != n + 1:
        raise ValueError(f"need {n + 1} per-level populations, got {len(pops)}")
    groups = []
    for i in range(n + 1):
        label = f"{i} switched of {n}" if i > 0 else f"0 excited of {n}"
        groups.append(LevelGroup(
            i * d if i > 0 else 0.0, log_comb(n, i), LogScalar.from_linear(pops[i]),
            label, math.comb(n, i) if n <= 300 else None,
        ))
    for k in range(1, n + 1):
        groups.append(LevelGroup(
            k * w, log_comb(n, k), LogScalar.zero(), f"{k} excited of {n}",
            math.comb(n, k) if n <= 300 else None,
        ))
    return DiagonalState(tuple(groups))


def gibbs_state(levels: list[tuple[float, float]]) -> DiagonalState:
    """Thermal state over (energy, log_degeneracy) pairs: p = e^{-E}/Z."""
    if not levels:
        raise ValueError("gibbs_state needs at least one level")
    log_z = log_sum(ld - e for e, ld in levels)
    groups = tuple(
        LevelGroup(e, ld, LogScalar(-e - log_z), f"level{i}",
                   round(math.exp(ld)) if ld < 40 else None)
        for i, (e, ld) in enumerate(levels)
    )
    return DiagonalState(groups)


def free_energy(state: DiagonalState) -> float:
    """F = sum deg*p*E + sum deg*p*ln p with 0 ln 0 := 0 (beta = 1)."""
    terms = []
    for grp in sorted(state.groups, key=lambda t: (t.energy, t.label)):
        if grp.population.is_zero:
            continue
        mass = math.exp(grp.log_mass)
        terms.append(mass * grp.energy)
        terms.append(mass * grp.population.log)
    return math.fsum(terms)


def relative_entropy_to_gibbs(state: DiagonalState, gibbs: DiagonalState) -> float:
    """D(state || gibbs) = sum deg*p*(ln p - ln p_gibbs); same level structure."""
    if len(state.groups) != len(gibbs.groups):
        raise ValueError("states have different level structures")
    terms = []
    for grp, ref in zip(state.groups, gibbs.groups):
        if not math.isclose(grp.energy, ref.energy, rel_tol=0, abs_tol=1e-12) or \
                abs(grp.log_degeneracy - ref.log_degeneracy) > 1e-12:
            raise ValueError("states have different level structures")
        if grp.population.is_zero:
            continue
        if ref.population.is_zero:
            raise ValueError("support of state is not contained in reference")
        mass = math.exp(grp.log_mass)
        terms.append(mass * (grp.population.log - ref.population.log))
    return math.fsum(terms)


def mutual_information_two_mol(p0: float, p1: float, p2: float) -> float:
    """I(A:B) of diag(p0, p1, p1, p2) on two switches; marginal (p0+p1, p1+p2)."""
    if min(p0, p1, p2) < -1e-12:
        raise ValueError("populations must be nonnegative")
    total = p0 + 2 * p1 + p2
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"populations not normalized: {total}")

    def ent(ps):
        return -math.fsum(p * math.log(p) for p in ps if p > 0)

    s_joint = ent([p0, p1, p1, p2])
    s_marg = ent([p0 + p1, p1 + p2])
    return max(2 * s_marg - s_joint, 0.0)


def yield_from_populations(pops: list[float], n: int) -> float:
    """Ensemble-average switched fraction: sum_k C(n-1, k-1) p_k, k = 1..n.

    ``pops[k-1]`` is the per-level population on the k-switched levels.
    """
    if len(pops) != n:
        raise ValueError(f"need {n} per-level populations, got {len(pops)}")
    terms = []
    for k, p in enumerate(pops, start=1):
        if p < 0:
            raise ValueError("populations must be nonnegative")
        if p > 0:
            terms.append(math.exp(log_comb(n - 1, k - 1) + math.log(p)))
    val = math.fsum(terms)
    if val > 1.0 + 1e-9:
        raise ValueError(f"yield exceeds 1 beyond tolerance: {val}")
    return min(max(val, 0.0), 1.0)
