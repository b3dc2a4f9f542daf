"""Symmetrized spin-position basis functions for two spin-1/2 particles.

Two constructions of the same object: the exact symmetrized product of a
spin factor and a position factor, and the factorized form built from
separately symmetrized (but un-normalized) spin and position functions.
For two particles the factorized form is exact.  Position factors are
single-oscillator eigenfunctions; spin variables take values in
{-1/2, +1/2} and the spin basis functions are Kronecker deltas.
"""

from __future__ import annotations

import math

from .wavefunctions import hermite_function

__all__ = [
    "SPIN_VALUES",
    "ExclusionError",
    "chi_spin",
    "chi_position",
    "chi_pair",
    "chi_tilde",
    "exact_symmetrized",
    "factorized_symmetrized",
    "classify_state",
]

SPIN_VALUES = (-0.5, +0.5)


class ExclusionError(ValueError):
    """The requested antisymmetric state vanishes identically."""


def _check_pair(pair, name, allowed=None):
    if len(pair) != 2:
        raise ValueError(f"{name} must have exactly two entries")
    if allowed is not None and any(v not in allowed for v in pair):
        raise ValueError(f"{name} entries must be in {allowed}")


def chi_spin(s, sign: int) -> int:
    """Signed two-permutation sum over the spin labels: 1 +- delta(s1,s2)."""
    _check_pair(s, "s", SPIN_VALUES)
    return 1 + sign * (s[0] == s[1])


def chi_position(n, sign: int) -> int:
    """Signed two-permutation sum over the position labels: 1 +- delta(n1,n2)."""
    _check_pair(n, "n")
    return 1 + sign * (n[0] == n[1])


def chi_pair(n, s, sign: int) -> int:
    """Normalization factor of the exact symmetrized pair state."""
    return 1 + sign * ((s[0] == s[1]) and (n[0] == n[1]))


def chi_tilde(n, s, sign: int) -> int:
    """Normalization of the factorized form; equals 2 * chi_pair."""
    if sign == +1:
        return (chi_spin(s, +1) * chi_position(n, +1)
                + chi_spin(s, -1) * chi_position(n, -1))
    return (chi_spin(s, +1) * chi_position(n, -1)
            + chi_spin(s, -1) * chi_position(n, +1))


def _alpha(s, sigma) -> float:
    return float(s[0] == sigma[0] and s[1] == sigma[1])


def _phi(n, q) -> float:
    return hermite_function(n[0], q[0]) * hermite_function(n[1], q[1])


def exact_symmetrized(n, s, q, sigma, sign: int) -> float:
    """Symmetrized pair basis function at (q, sigma).

    Value of [alpha_s(sigma) phi_n(q) +- alpha_s(sigma') phi_n(q')] over
    sqrt(2 chi), with primes marking the swapped pair.  Raises
    ExclusionError for the vanishing antisymmetric state (equal spins
    and equal position labels).
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    _check_pair(q, "q")
    _check_pair(sigma, "sigma", SPIN_VALUES)
    norm = chi_pair(n, s, sign)
    if norm == 0:
        raise ExclusionError(f"state n={n}, s={s} is excluded for sign -1")
    swapped_q = (q[1], q[0])
    swapped_sigma = (sigma[1], sigma[0])
    value = (_alpha(s, sigma) * _phi(n, q)
             + sign * _alpha(s, swapped_sigma) * _phi(n, swapped_q))
    return value / math.sqrt(2.0 * norm)


def factorized_symmetrized(n, s, q, sigma, sign: int) -> float:
    """Factorized symmetrization: sums of products of separately
    symmetrized spin and position functions.

    The spin and position factors are deliberately un-normalized so that
    every term of the underlying permutation sum carries equal weight;
    only the overall chi_tilde normalizes the state.  Identical to the
    exact form for two particles.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    _check_pair(q, "q")
    _check_pair(sigma, "sigma", SPIN_VALUES)
    norm = chi_tilde(n, s, sign)
    if norm == 0:
        raise ExclusionError(f"state n={n}, s={s} is excluded for sign -1")
    swapped_q = (q[1], q[0])
    swapped_sigma = (sigma[1], sigma[0])
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    alpha_sym = inv_sqrt2 * (_alpha(s, sigma) + _alpha(s, swapped_sigma))
    alpha_anti = inv_sqrt2 * (_alpha(s, sigma) - _alpha(s, swapped_sigma))
    phi_sym = inv_sqrt2 * (_phi(n, q) + _phi(n, swapped_q))
    phi_anti = inv_sqrt2 * (_phi(n, q) - _phi(n, swapped_q))
    if sign == +1:
        value = alpha_sym * phi_sym + alpha_anti * phi_anti
    else:
        value = alpha_sym * phi_anti + alpha_anti * phi_sym
    return value / math.sqrt(norm)


def classify_state(n, s) -> str:
    """Character of the antisymmetric pair state.

    Equal position labels with opposite spins give the singlet-like
    combination; distinct position labels give triplet-like states; equal
    position labels with equal spins are excluded.
    """
    _check_pair(n, "n")
    _check_pair(s, "s", SPIN_VALUES)
    if n[0] == n[1]:
        return "excluded" if s[0] == s[1] else "singlet-like"
    return "triplet-like"
