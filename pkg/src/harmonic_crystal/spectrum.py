"""Closed-form normal modes and energy-ordered enumeration of quantum levels.

The coupling matrix is tridiagonal Toeplitz, so its eigenpairs are known
in closed form (sines and cosines).  Multi-mode quantum levels are
enumerated lowest-energy-first by seeding with the lowest-frequency
ladder and repeatedly inserting one-quantum excitations of the higher
modes in energy order.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .model import CrystalParams

__all__ = [
    "ModeSpectrum",
    "Level",
    "LevelTable",
    "diagonalize",
    "to_modes",
    "from_modes",
    "build_level_table",
    "level_scaling_exponent",
]


@dataclass(frozen=True)
class ModeSpectrum:
    """Eigenvalues, frequencies, eigenvector matrix and mode scales.

    mu[n] = K + 2*cos((n+1)*pi/(N+1)) are the (negative, descending)
    eigenvalues; omega = sqrt(-lam*mu) the frequencies in omega_lj
    (ascending); X the orthogonal, symmetric eigenvector matrix; scale
    the per-mode factor sqrt(m*omega_n/hbar) in 1/r_e that maps
    displacements to dimensionless mode amplitudes.
    """

    mu: np.ndarray
    omega: np.ndarray
    X: np.ndarray
    scale: np.ndarray

    @property
    def n_modes(self) -> int:
        return len(self.omega)

    @property
    def ground_energy(self) -> float:
        return _level_energy((0,) * self.n_modes, self.omega)


def diagonalize(params: CrystalParams) -> ModeSpectrum:
    """Closed-form eigenpairs of the coupling matrix."""
    n = params.n_particles
    k = np.arange(1, n + 1)
    theta = k * np.pi / (n + 1)
    mu = params.coupling_constant + 2.0 * np.cos(theta)
    omega = np.sqrt(-params.lam * mu)
    X = math.sqrt(2.0 / (n + 1)) * np.sin(np.outer(k, k) * np.pi / (n + 1))
    scale = np.sqrt(omega) / params.units.mode_length
    return ModeSpectrum(mu=mu, omega=omega, X=X, scale=scale)


def to_modes(q, spectrum: ModeSpectrum, params: CrystalParams) -> np.ndarray:
    """Dimensionless mode amplitudes of a position vector (in r_e)."""
    q = np.asarray(q, dtype=float)
    return spectrum.scale * (spectrum.X.T @ (q - params.lattice()))


def from_modes(Q, spectrum: ModeSpectrum, params: CrystalParams) -> np.ndarray:
    """Positions (in r_e) from mode amplitudes; exact inverse of to_modes."""
    Q = np.asarray(Q, dtype=float)
    return params.lattice() + spectrum.X @ (Q / spectrum.scale)


def _level_energy(quanta, omega) -> float:
    # Sum in ascending mode order; the enumeration oracle must accumulate
    # the same way so that energy ordering compares identical floats.
    e = 0.0
    for l, w in zip(quanta, omega):
        e += (l + 0.5) * w
    return e


@dataclass(frozen=True)
class Level:
    """One multi-mode quantum level: per-mode quanta and total energy."""

    quanta: tuple[int, ...]
    energy: float


class LevelTable:
    """Lowest-energy quantum levels in nondecreasing energy order.

    Ranks are 1-based: rank 1 is the ground state.  Degenerate energies
    are ordered by lexicographically smallest quanta vector.
    """

    def __init__(self, quanta: np.ndarray, energies: np.ndarray):
        self.quanta = np.ascontiguousarray(quanta, dtype=np.int32)
        self.energies = np.ascontiguousarray(energies, dtype=float)
        if len(self.quanta) != len(self.energies):
            raise ValueError("quanta and energies length mismatch")

    def __len__(self) -> int:
        return len(self.energies)

    @property
    def n_modes(self) -> int:
        return self.quanta.shape[1]

    def level(self, rank: int) -> Level:
        if not 1 <= rank <= len(self):
            raise IndexError(f"rank {rank} out of range 1..{len(self)}")
        return Level(tuple(int(x) for x in self.quanta[rank - 1]),
                     float(self.energies[rank - 1]))

    def rank_of(self, quanta) -> int:
        key = tuple(int(x) for x in quanta)
        if not hasattr(self, "_rank_map"):
            self._rank_map = {
                tuple(int(x) for x in row): i + 1
                for i, row in enumerate(self.quanta)
            }
        return self._rank_map[key]

    def max_degrees(self) -> np.ndarray:
        """Largest quantum number used per mode."""
        return self.quanta.max(axis=0)


def build_level_table(spectrum: ModeSpectrum, l_max: int) -> LevelTable:
    """The l_max lowest-energy quanta vectors, in order.

    Seeds with the lowest-frequency ladder {l, 0, ..., 0}, then cycles
    over the higher modes, adding one quantum to each tabled state and
    inserting the result in order, bumping up the higher states and
    discarding the highest, until a full cycle changes nothing.
    """
    if l_max < 1:
        raise ValueError("l_max must be >= 1")
    omega = spectrum.omega
    n = spectrum.n_modes

    def key(quanta):
        return (_level_energy(quanta, omega), quanta)

    entries = [key((l,) + (0,) * (n - 1)) for l in range(l_max)]
    if n > 1:
        seen = {q for _, q in entries}
        changed = True
        while changed:
            changed = False
            for mode in range(1, n):
                for _, src in list(entries):
                    cand = src[:mode] + (src[mode] + 1,) + src[mode + 1:]
                    if cand in seen:
                        continue
                    k = key(cand)
                    pos = bisect.bisect_left(entries, k)
                    if pos >= l_max:
                        # sources are in key order, so every later
                        # candidate of this mode lands at least as high
                        break
                    entries.insert(pos, k)
                    seen.add(cand)
                    dropped = entries.pop()
                    seen.discard(dropped[1])
                    changed = True

    quanta = np.array([q for _, q in entries], dtype=np.int32)
    energies = np.array([e for e, _ in entries], dtype=float)
    return LevelTable(quanta, energies)


def level_scaling_exponent(table: LevelTable, rank_start: int = 100) -> float:
    """Least-squares slope of log(E) vs log(rank) over ranks >= rank_start."""
    if len(table) <= rank_start:
        raise ValueError(f"table too short: need more than {rank_start} levels")
    ranks = np.arange(rank_start, len(table) + 1)
    energies = table.energies[rank_start - 1:]
    slope, _ = np.polyfit(np.log(ranks), np.log(energies), 1)
    return float(slope)
