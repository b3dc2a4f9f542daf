import math

import numpy as np
import pytest

from harmonic_crystal import (CrystalParams, diagonalize, eigenfunction_value,
                              from_modes, hermite_function, hermite_table,
                              permuted_mode_amplitudes, to_modes)
from harmonic_crystal.oracle import hermite_reference
from harmonic_crystal.permutations import Permutation, identity
from harmonic_crystal.wavefunctions import orthonormality_grid


def params(n=2, kappa=0.0, lam=1.0, delta_q=0.5):
    return CrystalParams(n_particles=n, kappa=kappa, lam=lam, delta_q=delta_q)


class TestHermiteFunction:
    def test_ground_at_origin(self):
        assert hermite_function(0, 0.0) == pytest.approx(math.pi**-0.25, rel=1e-15)

    def test_first_excited_odd(self):
        assert hermite_function(1, 0.0) == 0.0

    def test_degree_60_vs_extended_precision(self):
        ref = hermite_reference(60, 1.3)
        assert ref == pytest.approx(-0.03122971202889408, rel=1e-13)
        assert hermite_function(60, 1.3) == pytest.approx(ref, rel=1e-10)

    def test_high_degree_spot_values(self):
        for degree, x in ((137, 0.25), (400, 3.7), (1000, -2.0)):
            assert hermite_function(degree, x) == pytest.approx(
                hermite_reference(degree, x), rel=1e-9, abs=1e-300)

    def test_bounded_recurrence(self):
        # the normalized functions never exceed the ground-state peak
        q = np.linspace(-10, 10, 401)
        table = hermite_table(800, q)
        assert np.abs(table).max() <= 1.0 + 1e-9

    def test_table_matches_scalar_path(self):
        q = np.array([-1.7, 0.3, 2.2])
        table = hermite_table(12, q)
        for degree in (0, 5, 12):
            for i, x in enumerate(q):
                assert table[degree, i] == hermite_function(degree, float(x))

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            hermite_table(-1, 0.0)


class TestOrthonormality:
    def test_grid_inner_products(self):
        x, w = orthonormality_grid(20)
        table = hermite_table(20, x)
        gram = (table * w) @ table.T
        assert np.abs(gram - np.eye(21)).max() < 1e-3

    def test_normalization_random_levels(self):
        rng = np.random.default_rng(21)
        p = params(n=3, kappa=1.0, delta_q=1.0)
        s = diagonalize(p)
        levels = [(0, 0, 0)] + [tuple(rng.integers(0, 6, 3)) for _ in range(3)]
        for quanta in levels:
            x, w = orthonormality_grid(max(quanta))
            norm = 1.0
            for l in quanta:
                values = hermite_table(l, x)[l]
                norm *= float((values * values) @ w)
            assert norm == pytest.approx(1.0, abs=1e-3)


class TestEigenfunctionValue:
    def test_ground_state_at_origin(self):
        for n in (1, 2, 4):
            value = eigenfunction_value((0,) * n, np.zeros(n))
            assert value == pytest.approx(math.pi ** (-n / 4), rel=1e-14)

    def test_odd_mode_vanishes_at_origin(self):
        assert eigenfunction_value((0, 1, 0), np.zeros(3)) == 0.0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            eigenfunction_value((0, 0), np.zeros(3))


class TestPermutedModeAmplitudes:
    def test_identity_exact(self):
        p = params()
        s = diagonalize(p)
        Q = np.array([0.3, -1.1])
        out = permuted_mode_amplitudes(Q, identity(2), s, p)
        assert np.array_equal(out, Q)

    def test_involution(self):
        p = params(n=4, delta_q=0.3)
        s = diagonalize(p)
        rng = np.random.default_rng(8)
        Q = rng.normal(0, 1, 4)
        perm = Permutation((2, 0, 1, 3))
        once = permuted_mode_amplitudes(Q, perm, s, p)
        back = permuted_mode_amplitudes(once, perm.inverse(), s, p)
        assert np.abs(back - Q).max() < 1e-12

    def test_swap_at_lattice_matches_direct_arithmetic(self):
        # permuting positions at the lattice minimum gives a nonzero mode
        # vector: scale * X^T (swapped lattice - lattice)
        p = params(n=2, delta_q=0.5)
        s = diagonalize(p)
        swap = Permutation((1, 0))
        Q = permuted_mode_amplitudes(np.zeros(2), swap, s, p)
        lattice = p.lattice()
        expected = s.scale * (s.X.T @ (lattice[[1, 0]] - lattice))
        assert np.abs(Q - expected).max() < 1e-12
        assert np.abs(Q).max() > 0.1

    def test_consistent_with_position_path(self):
        p = params(n=3, kappa=0.4, delta_q=0.8)
        s = diagonalize(p)
        rng = np.random.default_rng(9)
        Q = rng.normal(0, 1, 3)
        perm = Permutation((1, 2, 0))
        direct = permuted_mode_amplitudes(Q, perm, s, p)
        q = from_modes(Q, s, p)
        via_positions = to_modes(q[list(perm.mapping)], s, p)
        assert np.abs(direct - via_positions).max() < 1e-12
