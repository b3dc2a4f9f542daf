"""Harmonic-oscillator eigenfunctions and multi-mode product states.

Hermite functions are evaluated by the normalized three-term recurrence

    phi_0(Q) = pi**-0.25 * exp(-Q**2/2)
    phi_1(Q) = sqrt(2) * Q * phi_0(Q)
    phi_{l+1}(Q) = sqrt(2/(l+1)) * Q * phi_l(Q) - sqrt(l/(l+1)) * phi_{l-1}(Q)

which stays bounded (|phi_l| <= pi**-0.25) at any degree, unlike the raw
Hermite polynomials that overflow near degree 150.  Evaluating the whole
table phi_0..phi_D at once makes reading off thousands of stored levels
per grid point an O(D + levels) operation.
"""

from __future__ import annotations

import math

import numpy as np

from .model import CrystalParams
from .permutations import Permutation
from .spectrum import ModeSpectrum, from_modes, to_modes

__all__ = [
    "hermite_function",
    "hermite_table",
    "eigenfunction_value",
    "eigenfunction_at_positions",
    "permuted_mode_amplitudes",
    "orthonormality_grid",
]

_PI_QUARTER = math.pi ** -0.25


def hermite_table(max_degree: int, q) -> np.ndarray:
    """All Hermite functions phi_0..phi_max_degree at the given points.

    Returns an array of shape (max_degree + 1, len(q)).
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    q = np.atleast_1d(np.asarray(q, dtype=float))
    table = np.empty((max_degree + 1, q.size))
    table[0] = _PI_QUARTER * np.exp(-0.5 * q * q)
    if max_degree >= 1:
        table[1] = math.sqrt(2.0) * q * table[0]
    for l in range(1, max_degree):
        table[l + 1] = (math.sqrt(2.0 / (l + 1)) * q * table[l]
                        - math.sqrt(l / (l + 1.0)) * table[l - 1])
    return table


def hermite_function(degree: int, q):
    """phi_degree(q), the normalized oscillator eigenfunction."""
    scalar = np.isscalar(q) or np.ndim(q) == 0
    value = hermite_table(degree, q)[degree]
    return float(value[0]) if scalar else value


def eigenfunction_value(quanta, Q) -> float:
    """Product eigenfunction prod_n phi_{quanta[n]}(Q[n])."""
    Q = np.asarray(Q, dtype=float)
    if len(quanta) != Q.shape[-1]:
        raise ValueError("quanta and Q must have the same length")
    value = 1.0
    for l, x in zip(quanta, Q):
        value *= hermite_function(int(l), float(x))
    return value


def eigenfunction_at_positions(quanta, q, spectrum: ModeSpectrum,
                               params: CrystalParams) -> float:
    """Product eigenfunction evaluated at particle positions (in r_e)."""
    return eigenfunction_value(quanta, to_modes(q, spectrum, params))


def permuted_mode_amplitudes(Q, perm: Permutation, spectrum: ModeSpectrum,
                             params: CrystalParams) -> np.ndarray:
    """Mode amplitudes after permuting the particle positions.

    The positions derived from Q are permuted; the lattice is not.  For
    the identity this returns the input exactly.
    """
    Q = np.asarray(Q, dtype=float)
    if perm.is_identity:
        return Q.copy()
    q = from_modes(Q, spectrum, params)
    q_permuted = q[list(perm.mapping)]
    return spectrum.scale * (spectrum.X.T @ (q_permuted - params.lattice()))


def orthonormality_grid(max_degree: int, points: int = 71):
    """1D grid adequate for inner products of degrees <= max_degree.

    Extends past the classical turning point sqrt(2*max_degree + 1) and
    keeps the spacing below a quarter oscillation so the trapezoidal rule
    resolves the fastest lobes; the requested point count is raised when
    necessary.  Returns (points, weights).
    """
    turning = math.sqrt(2.0 * max_degree + 1.0)
    half_width = turning + 4.0
    max_spacing = math.pi / (2.0 * turning) if max_degree > 0 else 0.25
    n = max(points, 2 * math.ceil(half_width / max_spacing) + 1)
    if n % 2 == 0:
        n += 1
    x = np.linspace(-half_width, half_width, n)
    w = np.full(n, x[1] - x[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    return x, w
