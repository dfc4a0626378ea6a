"""Upper bounds on photoisomerization yield for molecular-switch ensembles.

Core surfaces: diagonal states over degenerate level groups (``states``),
thermomajorization curves and yield bisection (``curves``), closed-form
two-switch and thermodynamic-limit results (``closedform``), the
symmetry-reduced Gibbs-stochastic program with full-matrix oracles
(``gibbslp``), the typical-subspace greedy program (``asymptotics``),
coherent two-switch initial states (``coherence``), the five-level model
(``multilevel``), and a sweep CLI (``cli``).
"""

from .states import (DiagonalState, LevelGroup, ModelParams,
                     free_energy, gibbs_state, mutual_information_two_mol,
                     relative_entropy_to_gibbs, single_molecule_state,
                     symmetric_final_state, tensor_power_grouped,
                     yield_from_populations)
from .curves import (BetaOrder, ThermomajorizationCurve, beta_order, build_curve,
                     high_excitation_threshold, max_uncorrelated_yield,
                     single_molecule_max_yield, thermomajorizes)
from .closedform import (PiecewiseYield, branch_points_two_mol, conversion_rate,
                         delta_star, gamma2_correlated, gamma2_uncorrelated,
                         gamma_td, relative_advantage, two_mol_equal_yield_point)
from .gibbslp import (LPSolution, SymmetricLP, brute_force_full_lp,
                      build_symmetric_lp, max_correlated_yield,
                      max_uncorrelated_yield_lp_check, solve_symmetric_lp)
from .asymptotics import (AsymptoticLP, build_asymptotic_lp, free_energy_gap,
                          greedy_asymptotic_yield, greedy_vs_simplex_check,
                          typical_state)
from .coherence import CoherentPairState, build_coherent_initial, max_yield_coherent
from .multilevel import FiveLevelParams, five_level_initial, five_level_yield

__version__ = "0.1.0"
