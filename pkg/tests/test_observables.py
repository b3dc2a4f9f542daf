import math

import numpy as np
import pytest

from harmonic_crystal import (CrystalParams, PoleError, QuadratureGrid,
                              build_level_table, classical_energy,
                              compute_overlaps, default_beta_grid,
                              diagonalize, energy_variance,
                              enumerate_permutations, mean_energy,
                              partition_function, sweep_thermal,
                              thermal_density_profile)


def table_for(n=4, kappa=1.0, lam=1.0, delta_q=1.0, l_max=2000):
    p = CrystalParams(n_particles=n, kappa=kappa, lam=lam, delta_q=delta_q)
    s = diagonalize(p)
    return p, s, build_level_table(s, l_max)


class TestPartitionFunction:
    def test_single_oscillator_geometric_sum(self):
        p, s, t = table_for(n=1, l_max=2000)
        omega = s.omega[0]
        for beta in (0.5, 1.0, 3.0):
            closed = math.exp(-beta * omega / 2) / (1 - math.exp(-beta * omega))
            assert partition_function(t, np.ones(len(t)), beta) == \
                pytest.approx(closed, rel=1e-12)

    def test_ground_state_dominates_at_low_temperature(self):
        p, s, t = table_for(l_max=200)
        beta = 30.0
        z = partition_function(t, np.ones(200), beta)
        leading = math.exp(-beta * t.energies[0]) / math.factorial(4)
        assert z == pytest.approx(leading, rel=1e-10)

    def test_rejects_bad_beta(self):
        p, s, t = table_for(l_max=10)
        with pytest.raises(ValueError):
            partition_function(t, np.ones(10), 0.0)

    def test_chi_length_checked(self):
        p, s, t = table_for(l_max=10)
        with pytest.raises(ValueError):
            partition_function(t, np.ones(9), 1.0)


class TestMeanEnergy:
    def test_low_temperature_ground_state(self):
        p, s, t = table_for(l_max=500)
        assert mean_energy(t, np.ones(500), 40.0) == pytest.approx(
            0.5 * s.omega.sum(), rel=1e-12)

    def test_classical_window(self):
        p, s, t = table_for(l_max=5000)
        e = mean_energy(t, np.ones(5000), 0.35)
        assert abs(e - classical_energy(4, 0.35)) / classical_energy(4, 0.35) < 0.05

    def test_monotone_in_beta(self):
        p, s, t = table_for(l_max=1000)
        chi = np.ones(1000)
        energies = [mean_energy(t, chi, b) for b in np.geomspace(0.2, 20, 25)]
        assert np.all(np.diff(energies) <= 1e-12)

    def test_cutoff_starvation_at_high_temperature(self):
        # with a finite table the energy must fall below N/beta as beta -> 0
        p, s, t = table_for(l_max=500)
        beta = 0.05
        assert mean_energy(t, np.ones(500), beta) < classical_energy(4, beta)

    def test_pole_raises(self):
        p, s, t = table_for(l_max=3)
        chi = np.array([1.0, -1.0, 0.0])
        # choose beta so the two terms cancel: e^(-b e0) = e^(-b e1)
        beta = math.log(2.0) / (t.energies[1] - t.energies[0])
        chi = np.array([1.0, -2.0, 0.0])
        with pytest.raises(PoleError):
            mean_energy(t, chi, beta)


class TestVarianceAndIdentities:
    def test_variance_equals_energy_derivative(self):
        p, s, t = table_for(l_max=2000)
        chi = np.ones(2000)
        h = 1e-4
        for beta in np.geomspace(0.5, 5.0, 10):
            var = energy_variance(t, chi, beta)
            fd = -(mean_energy(t, chi, beta + h)
                   - mean_energy(t, chi, beta - h)) / (2 * h)
            assert abs(var - fd) / var < 1e-6

    def test_log_partition_derivative(self):
        p, s, t = table_for(l_max=2000)
        chi = np.ones(2000)
        h = 1e-4
        for beta in (0.7, 1.5, 4.0):
            fd = (math.log(partition_function(t, chi, beta + h))
                  - math.log(partition_function(t, chi, beta - h))) / (2 * h)
            assert abs(-fd - mean_energy(t, chi, beta)) / mean_energy(t, chi, beta) < 1e-6

    def test_variance_classical_limit(self):
        # the variance approaches N/beta^2 from below; with a finite table
        # the closest approach sits in the same window where the mean
        # energy touches the classical curve
        p, s, t = table_for(l_max=5000)
        chi = np.ones(5000)
        ratios = [energy_variance(t, chi, b) * b**2 / 4
                  for b in (0.35, 0.4, 0.45, 0.5, 0.6)]
        assert max(ratios) > 0.9
        assert all(r < 1.0 for r in ratios)

    def test_variance_vanishes_at_zero_temperature(self):
        p, s, t = table_for(l_max=100)
        assert energy_variance(t, np.ones(100), 50.0) == pytest.approx(0.0, abs=1e-12)


class TestClassicalEnergy:
    def test_values(self):
        assert classical_energy(4, 1.0) == 4.0
        assert classical_energy(1, 2.0) == 0.5

    def test_scaling(self):
        assert classical_energy(3, 2.0) == classical_energy(3, 1.0) / 2.0


class TestSweep:
    def test_identity_chi_makes_statistics_equal(self):
        p, s, t = table_for(l_max=300)
        chi = np.ones(300)
        points = sweep_thermal(t, chi, chi, [0.5, 1.0, 2.0], 4)
        for point in points:
            assert point.e_plus == point.e_minus
            assert point.z_plus == point.z_minus
            assert not point.pole_flag

    def test_pole_flagged_not_raised(self):
        p, s, t = table_for(l_max=2)
        chi_minus = np.array([1.0, -2.0])
        beta = math.log(2.0) / (t.energies[1] - t.energies[0])
        points = sweep_thermal(t, np.ones(2), chi_minus, [beta], 4)
        assert points[0].pole_minus
        assert math.isnan(points[0].e_minus)
        assert not points[0].pole_plus

    def test_default_beta_grid(self):
        grid = default_beta_grid()
        assert len(grid) == 60
        assert grid[0] == pytest.approx(0.05)
        assert grid[-1] == pytest.approx(10.0)


class TestThermalDensity:
    def test_zero_coupling_to_sites_localized_profile(self):
        # strong springs, beta = 2: the density vanishes midway between
        # lattice points
        p = CrystalParams(n_particles=2, kappa=0.0, lam=0.5, delta_q=1.0)
        s = diagonalize(p)
        t = build_level_table(s, 400)
        perms = enumerate_permutations(2, 2)
        res = compute_overlaps(t, perms, QuadratureGrid(71, 0.14, 2), s, p,
                               collect_density=True)
        r, rho = thermal_density_profile(res, t, 2.0, +1)
        width = res.density.bin_width
        assert rho.sum() * width == pytest.approx(2.0, abs=1e-2)
        midpoint = np.argmin(np.abs(r - 1.5))
        assert rho[midpoint] < 1e-3 * rho.max()

    def test_pole_propagates(self):
        p, s, t = table_for(n=2, l_max=4)
        perms = enumerate_permutations(2)
        res = compute_overlaps(t, perms, QuadratureGrid(71, 0.14, 2), s, p,
                               collect_density=True)
        res.overlaps[:, :] = 0.5
        with pytest.raises(PoleError):
            thermal_density_profile(res, t, 1.0, -1)
