"""Physical parameters, units, and the harmonic-crystal potential.

The model is a chain of N particles on a line, each tied to its own
lattice site by a spring kappa and to its neighbors by springs lambda.
Fixed wall particles sit at both ends of the chain.  Internally all
quantities are dimensionless: energies in units of hbar*omega_LJ,
lengths in units of r_e, spring constants in units of m*omega_LJ**2,
and inverse temperatures as beta*hbar*omega_LJ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "UnitSystem",
    "NEON",
    "CrystalParams",
    "PotentialMatrix",
    "build_potential_matrix",
    "potential_model_i",
    "potential_model_ii",
    "potential_model_iii",
    "thermal_wavelength",
]


@dataclass(frozen=True)
class UnitSystem:
    """SI constants of the reference material plus derived scales.

    mass, r_e (zero-force separation) and epsilon (well depth) define a
    Lennard-Jones frequency omega_lj = sqrt(72*epsilon/(mass*r_e**2)),
    which together with hbar sets the oscillator length used to convert
    between positions in r_e and dimensionless mode amplitudes.
    """

    mass: float          # kg
    r_e: float           # m
    epsilon: float       # J
    hbar: float = 1.054571817e-34   # J s
    k_B: float = 1.380649e-23       # J / K
    omega_lj: float = field(init=False)

    def __post_init__(self):
        for name in ("mass", "r_e", "epsilon", "hbar", "k_B"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")
        object.__setattr__(
            self, "omega_lj",
            math.sqrt(72.0 * self.epsilon / (self.mass * self.r_e**2)),
        )

    @property
    def oscillator_length(self) -> float:
        """sqrt(hbar / (mass * omega_lj)) in meters."""
        return math.sqrt(self.hbar / (self.mass * self.omega_lj))

    @property
    def mode_length(self) -> float:
        """Oscillator length in units of r_e (dimensionless)."""
        return self.oscillator_length / self.r_e


# Lennard-Jones neon
NEON = UnitSystem(mass=3.35e-26, r_e=3.13e-10, epsilon=4.93e-22)


@dataclass(frozen=True)
class CrystalParams:
    """Model parameters of the harmonic chain.

    kappa and lam are in units of mass*omega_lj**2, delta_q in units of
    r_e.  Wall particles at 0 and (N+1)*delta_q are implicit; they are
    never part of a position vector.
    """

    n_particles: int
    kappa: float
    lam: float
    delta_q: float
    units: UnitSystem = NEON

    def __post_init__(self):
        if self.n_particles < 1:
            raise ValueError("n_particles must be >= 1")
        if self.lam <= 0.0:
            raise ValueError("lam must be strictly positive")
        if self.kappa < 0.0:
            raise ValueError("kappa must be non-negative")
        if self.delta_q <= 0.0:
            raise ValueError("delta_q must be strictly positive")

    @property
    def coupling_constant(self) -> float:
        """Diagonal K = -2 - kappa/lam of the potential matrix (<= -2)."""
        return -2.0 - self.kappa / self.lam

    @property
    def density(self) -> float:
        """Overall number density 1/delta_q in 1/r_e."""
        return 1.0 / self.delta_q

    def lattice(self) -> np.ndarray:
        """Ordered lattice positions j*delta_q, j = 1..N (walls excluded)."""
        return np.arange(1, self.n_particles + 1, dtype=float) * self.delta_q

    @property
    def wall_positions(self) -> tuple[float, float]:
        return 0.0, (self.n_particles + 1) * self.delta_q


@dataclass(frozen=True)
class PotentialMatrix:
    """Symmetric tridiagonal coupling matrix: K on the diagonal, 1 off it."""

    dimension: int
    diagonal_value: float

    def as_array(self) -> np.ndarray:
        n = self.dimension
        m = np.zeros((n, n))
        np.fill_diagonal(m, self.diagonal_value)
        idx = np.arange(n - 1)
        m[idx, idx + 1] = 1.0
        m[idx + 1, idx] = 1.0
        return m


def build_potential_matrix(params: CrystalParams) -> PotentialMatrix:
    """Coupling matrix of the quadratic displacement form."""
    return PotentialMatrix(params.n_particles, params.coupling_constant)


def _harmonic_energy(displacements: np.ndarray, params: CrystalParams) -> float:
    # Site springs plus neighbor springs; walls enter as fixed zero
    # displacements at both ends.
    dd = np.diff(displacements, prepend=0.0, append=0.0)
    return float(
        0.5 * params.kappa * np.dot(displacements, displacements)
        + 0.5 * params.lam * np.dot(dd, dd)
    )


def potential_model_i(q, params: CrystalParams) -> float:
    """Potential with displacements taken from the fixed ordered lattice.

    Particle j is referenced to lattice site j no matter where it sits,
    so the value changes under permutations of q.  Energy is in units of
    mass*omega_lj**2*r_e**2 for q in r_e.
    """
    q = np.asarray(q, dtype=float)
    return _harmonic_energy(q - params.lattice(), params)


def potential_model_ii(q, params: CrystalParams) -> float:
    """Potential of the sorted positions; invariant under permutations."""
    q = np.sort(np.asarray(q, dtype=float), kind="stable")
    return _harmonic_energy(q - params.lattice(), params)


def potential_model_iii(q, params: CrystalParams) -> float:
    """Potential about the closest of the N! equivalent lattice minima.

    Each particle is assigned the lattice site matching its spatial rank
    (the optimal squared-distance assignment in one dimension; ties are
    broken by original index order).  The neighbor-spring sum runs over
    particles adjacent in space, with the walls flanking the outermost
    two.  Invariant under permutations of q.
    """
    q = np.asarray(q, dtype=float)
    order = np.argsort(q, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(len(q))
    d = q - params.lattice()[rank]
    kappa_term = 0.5 * params.kappa * float(np.dot(d, d))
    d_spatial = d[order]
    dd = np.diff(d_spatial, prepend=0.0, append=0.0)
    return kappa_term + 0.5 * params.lam * float(np.dot(dd, dd))


def thermal_wavelength(beta: float, units: UnitSystem) -> float:
    """Thermal de Broglie wavelength in meters for dimensionless beta.

    beta is beta*hbar*omega_lj; the wavelength is
    sqrt(2*pi*hbar**2*beta_SI/mass).
    """
    if beta <= 0.0:
        raise ValueError("beta must be strictly positive")
    return math.sqrt(2.0 * math.pi * units.hbar * beta / (units.mass * units.omega_lj))
