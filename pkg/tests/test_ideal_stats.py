import itertools
import math
import random

import pytest

from harmonic_crystal.ideal_stats import (chi_boson, chi_fermion,
                                          chi_signed_sum, occupancy_of,
                                          occupancy_sum_equivalence)


class TestChiBoson:
    def test_all_distinct(self):
        assert chi_boson((1, 2, 3)) == 1

    def test_one_pair(self):
        assert chi_boson((5, 5, 7)) == 2

    def test_triple(self):
        assert chi_boson(("a", "a", "a")) == 6

    def test_matches_signed_sum(self):
        for n_states in (2, 3, 4):
            for n in (2, 3, 4, 5):
                for labeled in itertools.product(range(n_states), repeat=n):
                    assert chi_boson(labeled) == chi_signed_sum(labeled, +1)


class TestChiFermion:
    def test_all_distinct(self):
        assert chi_fermion((3, 1, 4)) == 1

    def test_any_repeat_vanishes(self):
        assert chi_fermion((2, 2, 5)) == 0

    def test_two_particle_cancellation(self):
        assert chi_signed_sum(("a", "a"), -1) == 0

    def test_matches_signed_sum(self):
        for n_states in (2, 3, 4):
            for n in (2, 3, 4, 5):
                for labeled in itertools.product(range(n_states), repeat=n):
                    assert chi_fermion(labeled) == chi_signed_sum(labeled, -1)

    def test_signed_sum_vanishes_exactly_with_multiple_occupancy(self):
        for labeled in ((0, 0), (1, 1, 2), (0, 1, 0, 2), (3, 3, 3, 1)):
            assert chi_signed_sum(labeled, -1) == 0


class TestParityBalance:
    def test_block_of_identical_particles(self):
        # permutations within a block of m identical labels split evenly
        for m in range(2, 7):
            labeled = (0,) * m
            even = odd = 0
            for mapping in itertools.permutations(range(m)):
                seen = [False] * m
                cycles = 0
                for start in range(m):
                    if seen[start]:
                        continue
                    cycles += 1
                    j = start
                    while not seen[j]:
                        seen[j] = True
                        j = mapping[j]
                if (m - cycles) % 2 == 0:
                    even += 1
                else:
                    odd += 1
            assert even == odd == math.factorial(m) // 2
            assert chi_signed_sum(labeled, -1) == 0
            assert chi_signed_sum(labeled, +1) == math.factorial(m)


class TestOccupancy:
    def test_occupancy_of(self):
        occ = occupancy_of((2, 2, 0))
        assert occ[2] == 2 and occ[0] == 1

    def test_size_guard(self):
        with pytest.raises(ValueError):
            chi_boson((0,) * 9)


class TestOccupancySumEquivalence:
    def test_multiset_count_bosons(self):
        direct, via = occupancy_sum_equivalence(lambda m: 1, 3, 2, +1)
        assert direct == via == 6  # multisets of size 2 from 3 states

    def test_subset_count_fermions(self):
        direct, via = occupancy_sum_equivalence(lambda m: 1, 3, 2, -1)
        assert direct == via == 3  # subsets of size 2 from 3 states

    def test_energy_functional(self):
        energies = (0.0, 1.3, 2.9)

        def total_energy(m):
            return sum(c * e for c, e in zip(m, energies))

        for sign in (+1, -1):
            direct, via = occupancy_sum_equivalence(total_energy, 3, 2, sign)
            assert via == pytest.approx(direct, abs=1e-12)

    def test_random_functionals(self):
        rng = random.Random(42)
        for _ in range(20):
            n_states = rng.randint(2, 5)
            n_particles = rng.randint(2, 4)
            sign = rng.choice((+1, -1))
            weights = [rng.uniform(-2, 2) for _ in range(n_states)]
            power = rng.choice((1, 2))

            def f(m, weights=weights, power=power):
                return sum(w * c for w, c in zip(weights, m)) ** power

            direct, via = occupancy_sum_equivalence(f, n_states, n_particles,
                                                    sign)
            assert via == pytest.approx(direct, abs=1e-12)

    def test_guards(self):
        with pytest.raises(ValueError):
            occupancy_sum_equivalence(lambda m: 1, 6, 2, +1)
        with pytest.raises(ValueError):
            occupancy_sum_equivalence(lambda m: 1, 3, 2, 0)
