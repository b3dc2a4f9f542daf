"""Thermal averages over the level table.

Partition sums use the cutoff form Z = sum_l (chi_l/N!) exp(-beta*E_l).
Boltzmann factors are computed relative to the ground level, applied
identically to numerators and denominators, so ratios stay finite at any
beta.  Truncated fermionic sums can pass through zero; such points raise
PoleError (or are flagged in sweeps) rather than being clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectrum import LevelTable
from .symmetrization import POLE_EPSILON, PoleError, SymmetrizationResult

__all__ = [
    "ThermalPoint",
    "partition_function",
    "mean_energy",
    "energy_variance",
    "classical_energy",
    "thermal_density_profile",
    "sweep_thermal",
    "default_beta_grid",
]


def _weights(table: LevelTable, beta: float) -> np.ndarray:
    # Ground-shifted Boltzmann factors; exact for ratios.
    return np.exp(-beta * (table.energies - table.energies[0]))


def _shifted_sum(table: LevelTable, chi, beta: float) -> float:
    chi = np.asarray(chi, dtype=float)
    if len(chi) != len(table):
        raise ValueError("chi must have one entry per level")
    n_fact = math.factorial(table.n_modes)
    return float((chi / n_fact) @ _weights(table, beta))


def partition_function(table: LevelTable, chi, beta: float) -> float:
    """Cutoff partition sum; may be negative for truncated fermion chi."""
    if beta <= 0.0:
        raise ValueError("beta must be strictly positive")
    return math.exp(-beta * table.energies[0]) * _shifted_sum(table, chi, beta)


def mean_energy(table: LevelTable, chi, beta: float) -> float:
    """Boltzmann-weighted mean energy; PoleError near a partition zero."""
    if beta <= 0.0:
        raise ValueError("beta must be strictly positive")
    z = _shifted_sum(table, chi, beta)
    if abs(z) < POLE_EPSILON:
        raise PoleError(f"partition sum ~ 0 at beta={beta}: {z:.3e}")
    chi = np.asarray(chi, dtype=float)
    n_fact = math.factorial(table.n_modes)
    numerator = float((chi / n_fact * table.energies) @ _weights(table, beta))
    return numerator / z


def energy_variance(table: LevelTable, chi, beta: float) -> float:
    """<H^2> - <H>^2 from the same weighted sums (equals -d<H>/dbeta)."""
    if beta <= 0.0:
        raise ValueError("beta must be strictly positive")
    z = _shifted_sum(table, chi, beta)
    if abs(z) < POLE_EPSILON:
        raise PoleError(f"partition sum ~ 0 at beta={beta}: {z:.3e}")
    chi = np.asarray(chi, dtype=float)
    n_fact = math.factorial(table.n_modes)
    w = _weights(table, beta)
    e1 = float((chi / n_fact * table.energies) @ w) / z
    e2 = float((chi / n_fact * table.energies**2) @ w) / z
    return e2 - e1 * e1


def classical_energy(n_particles: int, beta: float) -> float:
    """Equipartition value N/beta (N position plus N momentum modes)."""
    if beta <= 0.0:
        raise ValueError("beta must be strictly positive")
    return n_particles / beta


def thermal_density_profile(result: SymmetrizationResult, table: LevelTable,
                            beta: float, sign: int,
                            d_max: int | None = None):
    """Boltzmann-weighted one-body density profile.

    The per-level chi cancels between the level weight and the level
    density, so the profile is the signed histogram sum weighted by
    Boltzmann factors over N! times the partition sum.  It integrates to
    the particle count up to quadrature and binning error.  Returns
    (r_centers, density).
    """
    if result.density is None:
        raise ValueError("result was computed without density accumulation")
    if len(table) != len(result.table):
        raise ValueError("table does not match the symmetrization result")
    chi = result.chi(sign, d_max)
    z = _shifted_sum(table, chi, beta)
    if abs(z) < POLE_EPSILON:
        raise PoleError(f"partition sum ~ 0 at beta={beta}: {z:.3e}")
    mask = result._mask(d_max)
    signs = result._signs(sign)[mask]
    signed_hist = np.einsum("lpb,p->lb", result.density.counts[:, mask, :], signs)
    w = _weights(table, beta)
    n_fact = math.factorial(table.n_modes)
    profile = (w @ signed_hist) / (n_fact * z * result.density.bin_width)
    return result.density.centers, profile


@dataclass(frozen=True)
class ThermalPoint:
    """Observables at one inverse temperature; pole flags mark points where
    the truncated partition sum crossed zero and the mean energy diverges."""

    beta: float
    z_plus: float
    z_minus: float
    e_plus: float
    e_minus: float
    e_classical: float
    variance: float       # boson-side energy variance
    pole_plus: bool
    pole_minus: bool

    @property
    def pole_flag(self) -> bool:
        return self.pole_plus or self.pole_minus


def sweep_thermal(table: LevelTable, chi_plus, chi_minus, betas,
                  n_particles: int) -> list[ThermalPoint]:
    """Thermal observables over a beta grid, flagging poles per point."""
    points = []
    for beta in betas:
        beta = float(beta)
        z_p = partition_function(table, chi_plus, beta)
        z_m = partition_function(table, chi_minus, beta)
        try:
            e_p = mean_energy(table, chi_plus, beta)
            var = energy_variance(table, chi_plus, beta)
            pole_p = False
        except PoleError:
            e_p, var, pole_p = math.nan, math.nan, True
        try:
            e_m = mean_energy(table, chi_minus, beta)
            pole_m = False
        except PoleError:
            e_m, pole_m = math.nan, True
        points.append(ThermalPoint(
            beta=beta, z_plus=z_p, z_minus=z_m, e_plus=e_p, e_minus=e_m,
            e_classical=classical_energy(n_particles, beta),
            variance=var, pole_plus=pole_p, pole_minus=pole_m,
        ))
    return points


def default_beta_grid(beta_min: float = 0.05, beta_max: float = 10.0,
                      n_points: int = 60) -> np.ndarray:
    """Log-spaced inverse temperatures covering the quantum-to-classical range."""
    return np.geomspace(beta_min, beta_max, n_points)
