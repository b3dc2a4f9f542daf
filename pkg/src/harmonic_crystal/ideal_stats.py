"""Symmetrization factors for single-particle (occupancy) states.

For a basis of single identical-particle states, the symmetrization
factor has closed forms: the product of occupancy factorials for the
symmetric sum, and 0/1 (Pauli exclusion) for the antisymmetric one.
These validate the general overlap machinery against exact
combinatorics, and show that an unrestricted labeled-state sum weighted
by chi/N! equals the restricted occupancy sum.  Everything here is exact
integer arithmetic.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

__all__ = [
    "occupancy_of",
    "chi_boson",
    "chi_fermion",
    "chi_signed_sum",
    "occupancy_sum_equivalence",
]

_MAX_PARTICLES = 8


def occupancy_of(labeled) -> Counter:
    """Occupancy m_n of each single-particle state in a labeled state."""
    return Counter(labeled)


def _check_size(labeled):
    if len(labeled) > _MAX_PARTICLES:
        raise ValueError(f"labeled states limited to {_MAX_PARTICLES} particles")


def chi_boson(labeled) -> int:
    """Symmetric-sum factor: product of occupancy factorials."""
    _check_size(labeled)
    out = 1
    for count in Counter(labeled).values():
        out *= math.factorial(count)
    return out


def chi_fermion(labeled) -> int:
    """Antisymmetric-sum factor: 1 if no state is doubly occupied, else 0."""
    _check_size(labeled)
    return 1 if all(c < 2 for c in Counter(labeled).values()) else 0


def _parity(mapping) -> int:
    n = len(mapping)
    seen = [False] * n
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = mapping[j]
    return (n - cycles) % 2


def chi_signed_sum(labeled, sign: int) -> int:
    """Direct signed permutation sum of <P n | n> (exact integers)."""
    _check_size(labeled)
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    n = len(labeled)
    total = 0
    for mapping in itertools.permutations(range(n)):
        if all(labeled[mapping[j]] == labeled[j] for j in range(n)):
            total += sign ** _parity(mapping)
    return total


def occupancy_sum_equivalence(f, n_states: int, n_particles: int, sign: int):
    """Evaluate sum_m f(m) by both routes; the pair should be equal.

    f takes an occupancy tuple of length n_states.  The direct route
    sums over allowed occupancies (any for the symmetric case, at most
    one per state for the antisymmetric case) with sum(m) = n_particles;
    the other sums over all labeled states weighted by chi/N!.  Returns
    (direct, via_chi).
    """
    if n_states > 5 or n_particles > 4:
        raise ValueError("intended for small state spaces (states <= 5, N <= 4)")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")

    direct = 0.0
    if sign == +1:
        choices = itertools.combinations_with_replacement(range(n_states),
                                                          n_particles)
    else:
        choices = itertools.combinations(range(n_states), n_particles)
    for chosen in choices:
        m = tuple(Counter(chosen).get(s, 0) for s in range(n_states))
        direct += f(m)

    chi = chi_boson if sign == +1 else chi_fermion
    via = 0.0
    for labeled in itertools.product(range(n_states), repeat=n_particles):
        weight = chi(labeled)
        if weight:
            m = tuple(Counter(labeled).get(s, 0) for s in range(n_states))
            via += weight * f(m)
    via /= math.factorial(n_particles)
    return direct, via
