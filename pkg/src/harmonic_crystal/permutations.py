"""Permutations of particle labels with parity and locality metric.

The metric length d_m measures how far a permutation moves particles
along the chain: 0 for the identity, 2 for a nearest-neighbor swap, 4
for two nearest-neighbor swaps or a cyclic shuffle of three consecutive
particles.  It equals twice the minimum number of adjacent
transpositions (the inversion count), which for N=4 gives 4 permutations
with d_m <= 2 and 9 with d_m <= 4.  Truncating permutation sums at small
d_m exploits the spatial locality of symmetrization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

__all__ = [
    "Permutation",
    "PermutationSet",
    "enumerate_permutations",
    "metric_length",
    "parity",
    "parity_census",
]


@dataclass(frozen=True)
class Permutation:
    """A bijection on 0..n-1 in image form: applying it to a vector v
    yields v[mapping[j]] at slot j."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(n)):
            raise ValueError(f"not a bijection on 0..{n - 1}: {self.mapping}")

    def __len__(self) -> int:
        return len(self.mapping)

    @cached_property
    def parity(self) -> int:
        """0 for even, 1 for odd (cycle decomposition)."""
        n = len(self.mapping)
        seen = [False] * n
        cycles = 0
        for start in range(n):
            if seen[start]:
                continue
            cycles += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = self.mapping[j]
        return (n - cycles) % 2

    @cached_property
    def metric_length(self) -> int:
        """Twice the inversion count of the mapping (even, 0 iff identity)."""
        m = self.mapping
        n = len(m)
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if m[i] > m[j]
        )
        return 2 * inversions

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))

    def apply(self, v):
        """Permute the entries of a sequence: result[j] = v[mapping[j]]."""
        return type(v)(v[i] for i in self.mapping) if isinstance(v, tuple) \
            else [v[i] for i in self.mapping]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other)).apply(v) == self.apply(other.apply(v))."""
        return Permutation(tuple(other.mapping[i] for i in self.mapping))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.mapping)
        for j, i in enumerate(self.mapping):
            inv[i] = j
        return Permutation(tuple(inv))


def metric_length(p: Permutation) -> int:
    return p.metric_length


def parity(p: Permutation) -> str:
    return "odd" if p.parity else "even"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(n)))


def permutation_distance(p: Permutation, q: Permutation) -> int:
    """Metric on the permutation group: d_m(p o q^-1)."""
    return p.compose(q.inverse()).metric_length


class PermutationSet:
    """All permutations of n labels with d_m <= max_metric (None = all)."""

    def __init__(self, n: int, max_metric: int | None,
                 permutations: tuple[Permutation, ...]):
        self.n = n
        self.max_metric = max_metric
        self.permutations = permutations

    def __len__(self) -> int:
        return len(self.permutations)

    def __iter__(self):
        return iter(self.permutations)

    def __getitem__(self, i) -> Permutation:
        return self.permutations[i]

    @cached_property
    def identity_index(self) -> int:
        for i, p in enumerate(self.permutations):
            if p.is_identity:
                return i
        raise ValueError("set does not contain the identity")

    def parities(self):
        return [p.parity for p in self.permutations]

    def metric_lengths(self):
        return [p.metric_length for p in self.permutations]

    def restricted(self, max_metric: int | None) -> "PermutationSet":
        """Subset with d_m <= max_metric (must not exceed the current bound)."""
        if max_metric is None:
            if self.max_metric is not None:
                raise ValueError("cannot widen a filtered set")
            return self
        if self.max_metric is not None and max_metric > self.max_metric:
            raise ValueError("cannot widen a filtered set")
        kept = tuple(p for p in self.permutations
                     if p.metric_length <= max_metric)
        return PermutationSet(self.n, max_metric, kept)


def _bounded_mappings(n: int, max_inversions: int):
    # Depth-first construction in lexicographic order, pruning partial
    # mappings whose inversion count already exceeds the budget.
    mapping: list[int] = []
    used = [False] * n

    def rec(inv_so_far: int):
        if len(mapping) == n:
            yield tuple(mapping)
            return
        for v in range(n):
            if used[v]:
                continue
            inv = inv_so_far + sum(1 for u in mapping if u > v)
            if inv > max_inversions:
                continue
            used[v] = True
            mapping.append(v)
            yield from rec(inv)
            mapping.pop()
            used[v] = False

    yield from rec(0)


def enumerate_permutations(n: int, max_metric: int | None = None) -> PermutationSet:
    """Permutations of n labels, optionally filtered to d_m <= max_metric.

    Lexicographic generation order; the identity always comes first.
    Unbounded enumeration is refused for n > 10.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if max_metric is None:
        if n > 10:
            raise ValueError("unbounded enumeration refused for n > 10")
        perms = tuple(Permutation(m) for m in itertools.permutations(range(n)))
    else:
        if max_metric < 0:
            raise ValueError("max_metric must be non-negative")
        perms = tuple(Permutation(m)
                      for m in _bounded_mappings(n, max_metric // 2))
    return PermutationSet(n, max_metric, perms)


def parity_census(m: int) -> tuple[int, int]:
    """(even_count, odd_count) over all permutations of m objects."""
    if not 2 <= m <= 10:
        raise ValueError("m must be in 2..10")
    even = 0
    for mapping in itertools.permutations(range(m)):
        if Permutation(mapping).parity == 0:
            even += 1
    total = 1
    for i in range(2, m + 1):
        total *= i
    return even, total - even
