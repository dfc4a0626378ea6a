import math
from itertools import product

import pytest
from hypothesis import given, strategies as st

from switchyield.logdomain import LogScalar, log_sum
from switchyield.states import (DiagonalState, LevelGroup, ModelParams,
                                free_energy, gibbs_state,
                                mutual_information_two_mol,
                                relative_entropy_to_gibbs, single_molecule_state,
                                tensor_power_grouped, uncorrelated_final_state,
                                yield_from_populations)

LN2 = math.log(2.0)


def params(delta=3.0, w=30.0, q=0.5, n=1):
    return ModelParams(delta=delta, w=w, q=q, n=n)


class TestModelParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            ModelParams(delta=-1, w=30, q=0.5, n=1)
        with pytest.raises(ValueError):
            ModelParams(delta=3, w=0, q=0.5, n=1)
        with pytest.raises(ValueError):
            ModelParams(delta=3, w=30, q=1.5, n=1)
        with pytest.raises(ValueError):
            ModelParams(delta=3, w=30, q=0.5, n=0)


class TestSingleMolecule:
    def test_fig4_caption_parameters(self):
        state = single_molecule_state(params(delta=3, w=30, q=0.5))
        assert [g.energy for g in state.groups] == [0.0, 3.0, 30.0]
        assert state.populations() == pytest.approx([0.5, 0.0, 0.5], abs=1e-15)

    def test_no_excitation(self):
        state = single_molecule_state(params(q=0.0))
        assert state.populations() == pytest.approx([1.0, 0.0, 0.0], abs=1e-15)

    def test_full_excitation(self):
        state = single_molecule_state(params(q=1.0))
        assert state.populations() == pytest.approx([0.0, 0.0, 1.0], abs=1e-15)


class TestTensorPower:
    def test_two_switches_balanced(self):
        state = tensor_power_grouped(params(n=2, q=0.5))
        by_label = {g.label: g for g in state.groups}
        g0 = by_label["0 excited of 2"]
        g1 = by_label["1 excited of 2"]
        g2 = by_label["2 excited of 2"]
        assert (g0.energy, g0.degeneracy) == (0.0, 1)
        assert (g1.energy, g1.degeneracy) == (30.0, 2)
        assert (g2.energy, g2.degeneracy) == (60.0, 1)
        for g in (g0, g1, g2):
            assert g.population.to_linear() == pytest.approx(0.25, rel=1e-14)

    def test_single_copy_matches_single_molecule(self):
        one = tensor_power_grouped(params(n=1))
        base = single_molecule_state(params())
        pops1 = {(g.energy): g.population.to_linear() for g in one.groups}
        for g in base.groups:
            assert pops1[g.energy] == pytest.approx(g.population.to_linear(), abs=1e-15)

    def test_n50_peak_group_mass(self):
        # frozen from exact integer arithmetic: C(50,25) / 2^50
        state = tensor_power_grouped(params(n=50, q=0.5))
        grp = next(g for g in state.groups if g.label == "25 excited of 50")
        assert grp.population.to_linear() == pytest.approx(0.5 ** 50, rel=1e-13)
        assert math.exp(grp.log_mass) == pytest.approx(0.11227517265921705, rel=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
    def test_masses_match_string_enumeration(self, n, q):
        # independent oracle: enumerate all 3^n basis strings
        state = tensor_power_grouped(params(n=n, q=q))
        masses = {}
        for s in product((0, 1, 2), repeat=n):
            if 1 in s:
                continue
            k = s.count(2)
            masses[k] = masses.get(k, 0.0) + q ** k * (1 - q) ** (n - k)
        for k, mass in masses.items():
            grp = next(g for g in state.groups if g.label == f"{k} excited of {n}")
            assert math.exp(grp.log_mass) == pytest.approx(mass, rel=1e-12)

    def test_includes_switched_target_groups(self):
        state = tensor_power_grouped(params(n=3))
        labels = {g.label for g in state.groups}
        assert {"1 switched of 3", "2 switched of 3", "3 switched of 3"} <= labels

    def test_normalized(self):
        for n in (1, 7, 40):
            state = tensor_power_grouped(params(n=n, q=0.37))
            assert abs(log_sum(g.log_mass for g in state.groups)) < 1e-12


class TestGibbs:
    def test_single_level(self):
        state = gibbs_state([(0.0, 0.0)])
        assert state.populations() == [pytest.approx(1.0)]

    def test_two_level(self):
        state = gibbs_state([(0.0, 0.0), (30.0, 0.0)])
        z = 1 + math.exp(-30)
        assert state.populations() == pytest.approx([1 / z, math.exp(-30) / z], rel=1e-14)

    def test_three_level_partition_function(self):
        state = gibbs_state([(0.0, 0.0), (3.0, 0.0), (30.0, 0.0)])
        z = 1 + math.exp(-3) + math.exp(-30)
        assert state.populations()[0] == pytest.approx(1 / z, rel=1e-14)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            gibbs_state([])


class TestFreeEnergy:
    def test_half_excited(self):
        state = single_molecule_state(params(q=0.5, w=30))
        assert free_energy(state) == pytest.approx(15 - LN2, rel=1e-14)

    def test_gibbs_is_minus_log_z(self):
        levels = [(0.0, 0.0), (3.0, 0.0), (30.0, 0.0)]
        z = 1 + math.exp(-3) + math.exp(-30)
        assert free_energy(gibbs_state(levels)) == pytest.approx(-math.log(z), rel=1e-12)

    def test_pure_excited(self):
        state = single_molecule_state(params(q=1.0, w=30))
        assert free_energy(state) == pytest.approx(30.0, rel=1e-14)

    def test_gibbs_minimizes(self):
        levels = [(0.0, 0.0), (3.0, 0.0), (30.0, 0.0)]
        tau = gibbs_state(levels)
        for q in (0.1, 0.5, 0.9):
            rho = single_molecule_state(params(q=q))
            assert free_energy(rho) >= free_energy(tau) - 1e-12


class TestRelativeEntropy:
    def _gibbs3(self):
        return gibbs_state([(0.0, 0.0), (3.0, 0.0), (30.0, 0.0)])

    def test_gibbs_self_distance_zero(self):
        tau = self._gibbs3()
        assert relative_entropy_to_gibbs(tau, tau) == pytest.approx(0.0, abs=1e-12)

    @given(st.floats(min_value=0.01, max_value=0.99),
           st.floats(min_value=0.0, max_value=1.0))
    def test_free_energy_identity(self, q, split):
        # D(rho || tau) == F(rho) - F(tau) for random diagonal states
        p_cis = (1 - q) * split
        groups = (
            LevelGroup.make(0.0, 1, LogScalar.from_linear(1 - q - p_cis), "trans"),
            LevelGroup.make(3.0, 1, LogScalar.from_linear(p_cis), "cis"),
            LevelGroup.make(30.0, 1, LogScalar.from_linear(q), "excited"),
        )
        rho = DiagonalState(groups)
        tau = self._gibbs3()
        lhs = relative_entropy_to_gibbs(rho, tau)
        rhs = free_energy(rho) - free_energy(tau)
        assert lhs == pytest.approx(rhs, abs=1e-10)
        assert lhs >= -1e-12

    def test_half_excited_value(self):
        rho = single_molecule_state(params(q=0.5))
        tau = self._gibbs3()
        z = 1 + math.exp(-3) + math.exp(-30)
        assert relative_entropy_to_gibbs(rho, tau) == pytest.approx(
            15 - LN2 + math.log(z), rel=1e-12)


class TestMutualInformation:
    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_product_family_is_exactly_zero(self, gamma):
        p0, p1, p2 = (1 - gamma) ** 2, gamma * (1 - gamma), gamma ** 2
        assert mutual_information_two_mol(p0, p1, p2) == pytest.approx(0.0, abs=1e-12)

    def test_perfect_correlation(self):
        assert mutual_information_two_mol(0.5, 0.0, 0.5) == pytest.approx(LN2, rel=1e-12)

    def test_nonnegative_on_random(self):
        import random
        rng = random.Random(7)
        for _ in range(200):
            a, b, c = rng.random(), rng.random(), rng.random()
            tot = a + 2 * b + c
            assert mutual_information_two_mol(a / tot, b / tot, c / tot) >= 0.0

    def test_normalization_enforced(self):
        with pytest.raises(ValueError):
            mutual_information_two_mol(0.5, 0.5, 0.5)


class TestYieldComposition:
    def test_two_switches_nothing_switched(self):
        assert yield_from_populations([0.0, 0.0], 2) == 0.0

    def test_two_switches_all_switched(self):
        assert yield_from_populations([0.0, 1.0], 2) == pytest.approx(1.0)

    def test_three_switches_uniform(self):
        # (3*(1/3) + 3*(2/3) + 1) / 8 = 0.5
        assert yield_from_populations([1 / 8, 1 / 8, 1 / 8], 3) == pytest.approx(0.5, rel=1e-14)

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            yield_from_populations([0.1], 2)


class TestDiagonalStateInvariants:
    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            DiagonalState((LevelGroup.make(0.0, 1, LogScalar.from_linear(0.5), "x"),))

    def test_duplicate_energy_label_rejected(self):
        groups = (
            LevelGroup.make(0.0, 1, LogScalar.from_linear(0.5), "x"),
            LevelGroup.make(0.0, 1, LogScalar.from_linear(0.5), "x"),
        )
        with pytest.raises(ValueError):
            DiagonalState(groups)

    def test_degenerate_energies_with_distinct_labels_allowed(self):
        groups = (
            LevelGroup.make(0.0, 1, LogScalar.from_linear(0.5), "a"),
            LevelGroup.make(0.0, 1, LogScalar.from_linear(0.5), "b"),
        )
        assert DiagonalState(groups).total_levels == 2

    def test_uncorrelated_final_state_structure(self):
        sigma = uncorrelated_final_state(params(n=2), 0.3)
        by_label = {g.label: g.population.to_linear() for g in sigma.groups}
        assert by_label["0 excited of 2"] == pytest.approx(0.49, rel=1e-14)
        assert by_label["1 switched of 2"] == pytest.approx(0.21, rel=1e-14)
        assert by_label["2 switched of 2"] == pytest.approx(0.09, rel=1e-14)


class TestSymmetricFinalState:
    def test_round_trip_with_yield(self):
        from switchyield.states import symmetric_final_state, yield_from_populations
        p = ModelParams(3.0, 30.0, 0.5, 3)
        state = symmetric_final_state(p, [1 / 8, 1 / 8, 1 / 8, 1 / 8])
        by_label = {g.label: g for g in state.groups}
        assert by_label["2 switched of 3"].energy == 6.0
        assert by_label["2 switched of 3"].degeneracy == 3
        assert yield_from_populations([1 / 8] * 3, 3) == pytest.approx(0.5)

    def test_wrong_length_rejected(self):
        from switchyield.states import symmetric_final_state
        with pytest.raises(ValueError):
            symmetric_final_state(ModelParams(3.0, 30.0, 0.5, 2), [0.5, 0.5])

    def test_unnormalized_rejected(self):
        from switchyield.states import symmetric_final_state
        with pytest.raises(ValueError):
            symmetric_final_state(ModelParams(3.0, 30.0, 0.5, 2), [0.5, 0.5, 0.5])
