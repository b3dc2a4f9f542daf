"""Exact quantum statistical mechanics of a one-dimensional harmonic crystal.

Analytic phonon spectrum, boson/fermion wave-function symmetrization by
permutation-sum quadrature, and thermal observables (energy, density
profiles, partition sums) for a chain of particles tied to lattice sites
and to each other by linear springs.
"""

__version__ = "0.1.0"

from .model import (NEON, CrystalParams, PotentialMatrix, UnitSystem,
                    build_potential_matrix, potential_model_i,
                    potential_model_ii, potential_model_iii,
                    thermal_wavelength)
from .observables import (ThermalPoint, classical_energy, default_beta_grid,
                          energy_variance, mean_energy, partition_function,
                          sweep_thermal, thermal_density_profile)
from .permutations import (Permutation, PermutationSet,
                           enumerate_permutations, metric_length, parity,
                           parity_census)
from .spectrum import (Level, LevelTable, ModeSpectrum, build_level_table,
                       diagonalize, from_modes, level_scaling_exponent,
                       to_modes)
from .symmetrization import (DEFAULT_GRID, DENSE_GRID, MemoryBoundError,
                             PoleError, QuadratureGrid, SymmetrizationResult,
                             compute_overlaps, singlet_density)
from .wavefunctions import (eigenfunction_at_positions, eigenfunction_value,
                            hermite_function, hermite_table,
                            permuted_mode_amplitudes)

__all__ = [
    "__version__",
    "NEON", "UnitSystem", "CrystalParams", "PotentialMatrix",
    "build_potential_matrix", "potential_model_i", "potential_model_ii",
    "potential_model_iii", "thermal_wavelength",
    "ModeSpectrum", "Level", "LevelTable", "diagonalize", "to_modes",
    "from_modes", "build_level_table", "level_scaling_exponent",
    "Permutation", "PermutationSet", "enumerate_permutations",
    "metric_length", "parity", "parity_census",
    "hermite_function", "hermite_table", "eigenfunction_value",
    "eigenfunction_at_positions", "permuted_mode_amplitudes",
    "QuadratureGrid", "SymmetrizationResult", "compute_overlaps",
    "singlet_density", "PoleError", "MemoryBoundError",
    "DEFAULT_GRID", "DENSE_GRID",
    "ThermalPoint", "partition_function", "mean_energy", "energy_variance",
    "classical_energy", "thermal_density_profile", "sweep_thermal",
    "default_beta_grid",
]
