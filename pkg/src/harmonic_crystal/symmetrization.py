"""Symmetrization factors and singlet densities by grid quadrature.

The engine integrates products phi_l(Q') * phi_l(Q) over an
N-dimensional trapezoidal grid in mode space, where Q' is the mode
vector of the permuted particle positions.  Signed sums of the per-
permutation overlaps give the symmetrization factors chi+- that weight
each level in bosonic/fermionic traces; the same pass can bin the
particle positions into a one-body density histogram.

Permuting positions is affine in mode space (Q' = A Q + b per
permutation), so a grid slab is processed as: per-mode Hermite tables
once per (slab, permutation), combined into grouped outer-product
tables, and contracted against the quadrature weights with one matrix
product.  Slabs are merged in fixed index order, so results are
bit-identical for any worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .model import CrystalParams
from .permutations import PermutationSet
from .spectrum import LevelTable, ModeSpectrum
from .wavefunctions import hermite_table

__all__ = [
    "QuadratureGrid",
    "SymmetrizationResult",
    "DensityHistogram",
    "compute_overlaps",
    "singlet_density",
    "PoleError",
    "MemoryBoundError",
    "POLE_EPSILON",
    "DEFAULT_GRID",
    "DENSE_GRID",
    "WORKERS_ENV_VAR",
]

POLE_EPSILON = 1e-9
WORKERS_ENV_VAR = "HARMONIC_CRYSTAL_WORKERS"

# Gaussian prefactor bound exp(-Q_max**2/2) at the grid terminus
_TERMINUS_BOUND = 1e-5


class PoleError(ArithmeticError):
    """A partition or normalization sum is too close to zero to divide by."""


class MemoryBoundError(MemoryError):
    """Requested accumulators exceed the configured memory cap."""


@dataclass(frozen=True)
class QuadratureGrid:
    """Tensor-product trapezoidal grid in mode space, centered on Q = 0."""

    points_per_axis: int
    spacing: float
    dimension: int

    def __post_init__(self):
        if self.points_per_axis < 3 or self.points_per_axis % 2 == 0:
            raise ValueError("points_per_axis must be odd and >= 3")
        if self.spacing <= 0.0:
            raise ValueError("spacing must be strictly positive")
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        prefactor = math.exp(-0.5 * self.q_max**2)
        if prefactor > _TERMINUS_BOUND:
            raise ValueError(
                f"grid terminus too tight: exp(-Q_max^2/2) = {prefactor:.2e} "
                f"> {_TERMINUS_BOUND:.0e}; widen the grid"
            )

    @property
    def q_max(self) -> float:
        return self.spacing * (self.points_per_axis - 1) / 2.0

    @property
    def total_points(self) -> int:
        return self.points_per_axis ** self.dimension

    def axis(self) -> np.ndarray:
        return np.linspace(-self.q_max, self.q_max, self.points_per_axis)

    def axis_weights(self) -> np.ndarray:
        w = np.full(self.points_per_axis, self.spacing)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w


DEFAULT_GRID = (71, 0.14)
DENSE_GRID = (91, 0.12)


@dataclass(frozen=True)
class DensityHistogram:
    """Binned one-body density accumulators, per (level, permutation, bin)."""

    counts: np.ndarray     # (L, P, B)
    edges: np.ndarray      # (B + 1,)

    @property
    def bin_width(self) -> float:
        return float(self.edges[1] - self.edges[0])

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])


class SymmetrizationResult:
    """Per-level, per-permutation overlaps from one quadrature pass.

    chi(sign, d_max) re-aggregates the stored overlaps for any metric
    cutoff not exceeding the computed permutation set, so one pass
    serves several truncations.
    """

    def __init__(self, table: LevelTable, perms: PermutationSet,
                 grid: QuadratureGrid, overlaps: np.ndarray,
                 n_particles: int, density: DensityHistogram | None = None):
        self.table = table
        self.perms = perms
        self.grid = grid
        self.overlaps = overlaps
        self.n_particles = n_particles
        self.density = density
        self._parities = np.array(perms.parities())
        self._metrics = np.array(perms.metric_lengths())

    @property
    def energies(self) -> np.ndarray:
        return self.table.energies

    def _mask(self, d_max: int | None) -> np.ndarray:
        if d_max is None:
            return np.ones(len(self.perms), dtype=bool)
        return self._metrics <= d_max

    def _signs(self, sign: int) -> np.ndarray:
        if sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")
        return np.where(self._parities % 2 == 0, 1.0, float(sign))

    def chi(self, sign: int, d_max: int | None = None) -> np.ndarray:
        """Signed permutation sum of overlaps for every level."""
        mask = self._mask(d_max)
        return self.overlaps[:, mask] @ self._signs(sign)[mask]

    @property
    def chi_plus(self) -> np.ndarray:
        return self.chi(+1)

    @property
    def chi_minus(self) -> np.ndarray:
        return self.chi(-1)

    @property
    def identity_overlaps(self) -> np.ndarray:
        """Overlaps for the identity permutation; unity up to quadrature
        error, which gauges the accuracy of the grid for each level."""
        return self.overlaps[:, self.perms.identity_index]

    def symmetrized_state_energy(self, rank: int, sign: int,
                                 d_max: int | None = None) -> float:
        """Energy expectation in the symmetrized state; equals the level
        energy identically because the overlap sum cancels."""
        chi = float(self.chi(sign, d_max)[rank - 1])
        if abs(chi) < POLE_EPSILON:
            raise PoleError(f"chi({sign:+d}) ~ 0 for rank {rank}")
        overlap_sum = chi  # same signed sum in numerator and denominator
        return self.table.energies[rank - 1] * (overlap_sum / chi)


def singlet_density(result: SymmetrizationResult, rank: int, sign: int,
                    d_max: int | None = None):
    """One-body density profile of a single symmetrized level.

    Returns (r_centers, density); the profile integrates to the number of
    particles.  Raises PoleError when chi for this level is within
    POLE_EPSILON of zero.
    """
    if result.density is None:
        raise ValueError("result was computed without density accumulation")
    chi = float(result.chi(sign, d_max)[rank - 1])
    if abs(chi) < POLE_EPSILON:
        raise PoleError(f"chi({sign:+d}) ~ 0 for rank {rank}: {chi:.3e}")
    mask = result._mask(d_max)
    signs = result._signs(sign)[mask]
    hist = result.density.counts[rank - 1][mask]
    profile = (signs @ hist) / (chi * result.density.bin_width)
    return result.density.centers, profile


def default_density_edges(params: CrystalParams,
                          bin_width: float | None = None) -> np.ndarray:
    """Bins of width delta_q/25 spanning two spacings past the walls."""
    if bin_width is None:
        bin_width = params.delta_q / 25.0
    lo = -2.0 * params.delta_q
    hi = (params.n_particles + 3) * params.delta_q
    n_bins = int(round((hi - lo) / bin_width))
    return lo + bin_width * np.arange(n_bins + 1)


def _affine_maps(perms: PermutationSet, spectrum: ModeSpectrum,
                 params: CrystalParams):
    """Per-permutation affine action Q -> A Q + b in mode space."""
    n = params.n_particles
    X = spectrum.X
    s = spectrum.scale
    lattice = params.lattice()
    A = np.empty((len(perms), n, n))
    b = np.empty((len(perms), n))
    for i, p in enumerate(perms):
        if p.is_identity:
            A[i] = np.eye(n)
            b[i] = 0.0
        else:
            mapping = list(p.mapping)
            core = X.T @ X[mapping, :]
            A[i] = (s[:, None] * core) / s[None, :]
            b[i] = s * (X.T @ (lattice[mapping] - lattice))
    return A, b


def _split_modes(dims):
    """Partition mode indices into two groups with balanced table sizes."""
    order = sorted(range(len(dims)), key=lambda i: -dims[i])
    g1, g2 = [], []
    p1 = p2 = 1
    for i in order:
        if p1 <= p2:
            g1.append(i)
            p1 *= dims[i]
        else:
            g2.append(i)
            p2 *= dims[i]
    return sorted(g1), sorted(g2)


def _group_table(mode_tables, modes, n_cols):
    if not modes:
        return np.ones((1, n_cols))
    out = mode_tables[modes[0]]
    for m in modes[1:]:
        out = (out[:, None, :] * mode_tables[m][None, :, :]).reshape(-1, n_cols)
    return out


def _flat_indices(quanta, modes, dims):
    flat = np.zeros(len(quanta), dtype=np.int64)
    for m in modes:
        flat = flat * dims[m] + quanta[:, m]
    return flat


class _Engine:
    def __init__(self, table, perms, grid, spectrum, params,
                 density_edges, slab_points):
        self.quanta = table.quanta
        self.degrees = table.max_degrees()
        self.dims = [int(d) + 1 for d in self.degrees]
        self.grid = grid
        self.spectrum = spectrum
        self.params = params
        self.axis = grid.axis()
        self.axis_w = grid.axis_weights()
        self.A, self.b = _affine_maps(perms, spectrum, params)
        self.identity_index = perms.identity_index
        self.n_perms = len(perms)
        self.density_edges = density_edges
        self.g1, self.g2 = _split_modes(self.dims)
        self.f1 = _flat_indices(self.quanta, self.g1, self.dims)
        self.f2 = _flat_indices(self.quanta, self.g2, self.dims)
        self.slab_points = slab_points or self._auto_slab()

    def _auto_slab(self) -> int:
        # Largest per-point working set among the paths in use; sized so
        # temporaries stay around a few hundred MB.  Depends only on the
        # problem, never on the worker count.
        L = len(self.quanta)
        b1 = 1
        for m in self.g1:
            b1 *= self.dims[m]
        b2 = 1
        for m in self.g2:
            b2 *= self.dims[m]
        per_point = b1 + b2
        if self.density_edges is not None:
            per_point += 2 * L
        return int(min(65536, max(1024, 40_000_000 // max(per_point, 1))))

    def slabs(self):
        total = self.grid.total_points
        step = self.slab_points
        return [(start, min(start + step, total))
                for start in range(0, total, step)]

    def _slab_points(self, start, stop):
        idx = np.arange(start, stop)
        shape = (self.grid.points_per_axis,) * self.grid.dimension
        multi = np.unravel_index(idx, shape)
        Q = np.stack([self.axis[m] for m in multi], axis=1)
        w = self.axis_w[multi[0]].copy()
        for m in multi[1:]:
            w *= self.axis_w[m]
        return Q, w

    def _mode_tables(self, points):
        return [hermite_table(self.degrees[n], points[:, n])
                for n in range(points.shape[1])]

    def process(self, slab):
        start, stop = slab
        Q, w = self._slab_points(start, stop)
        n_cols = stop - start
        base = self._mode_tables(Q)

        with_density = self.density_edges is not None
        if with_density:
            positions = (self.params.lattice()
                         + (Q / self.spectrum.scale) @ self.spectrum.X.T)
            scatter = self._bin_matrix(positions, n_cols)
            n_bins = len(self.density_edges) - 1
            hist = np.zeros((len(self.quanta), self.n_perms, n_bins))
        else:
            hist = None

        overlaps = np.zeros((len(self.quanta), self.n_perms))
        for p in range(self.n_perms):
            if p == self.identity_index:
                permuted = base
            else:
                Qp = Q @ self.A[p].T + self.b[p]
                permuted = self._mode_tables(Qp)
            products = [tp * t for tp, t in zip(permuted, base)]
            t1 = _group_table(products, self.g1, n_cols)
            t2 = _group_table(products, self.g2, n_cols)
            if with_density:
                phi = t1[self.f1, :]
                phi *= t2[self.f2, :]
                overlaps[:, p] = phi @ w
                phi *= w
                hist[:, p, :] = (scatter.T @ phi.T).T
            else:
                contracted = (t1 * w) @ t2.T
                overlaps[:, p] = contracted[self.f1, self.f2]
        return overlaps, hist

    def _bin_matrix(self, positions, n_cols):
        edges = self.density_edges
        width = edges[1] - edges[0]
        n_bins = len(edges) - 1
        bins = np.floor((positions - edges[0]) / width).astype(np.int64)
        valid = (bins >= 0) & (bins < n_bins)
        rows = np.repeat(np.arange(n_cols), positions.shape[1])[valid.ravel()]
        cols = bins.ravel()[valid.ravel()]
        mat = sparse.coo_matrix(
            (np.ones(len(rows)), (rows, cols)), shape=(n_cols, n_bins)
        )
        return mat.tocsr()


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV_VAR, "1"))
    return max(1, workers)


def compute_overlaps(table: LevelTable, perms: PermutationSet,
                     grid: QuadratureGrid, spectrum: ModeSpectrum,
                     params: CrystalParams, *,
                     collect_density: bool = False,
                     density_bin_width: float | None = None,
                     workers: int | None = None,
                     memory_cap_bytes: int = 2 << 30,
                     slab_points: int | None = None) -> SymmetrizationResult:
    """Quadrature pass over the grid: overlaps for every (level, permutation).

    The identity-permutation overlaps should be unity; their deviation
    measures the quadrature error per level.  With collect_density=True
    the same pass bins the one-body density per (level, permutation).
    """
    n = params.n_particles
    if grid.dimension != n:
        raise ValueError("grid dimension must equal the particle count")
    if perms.n != n:
        raise ValueError("permutation size must equal the particle count")
    if table.n_modes != n:
        raise ValueError("level table mode count must equal the particle count")

    density_edges = None
    n_bins = 0
    if collect_density:
        density_edges = default_density_edges(params, density_bin_width)
        n_bins = len(density_edges) - 1

    accumulator_bytes = len(table) * len(perms) * 8
    if collect_density:
        accumulator_bytes += len(table) * len(perms) * n_bins * 8
    if accumulator_bytes > memory_cap_bytes:
        raise MemoryBoundError(
            f"accumulators need {accumulator_bytes} bytes "
            f"> cap {memory_cap_bytes}"
        )

    engine = _Engine(table, perms, grid, spectrum, params,
                     density_edges, slab_points)
    overlaps = np.zeros((len(table), len(perms)))
    hist = (np.zeros((len(table), len(perms), n_bins))
            if collect_density else None)

    n_workers = _resolve_workers(workers)
    slabs = engine.slabs()
    if n_workers == 1:
        partials = map(engine.process, slabs)
    else:
        pool = ThreadPoolExecutor(max_workers=n_workers)
        partials = pool.map(engine.process, slabs)
    # ordered reduction: map yields slabs in submission order
    for part_overlaps, part_hist in partials:
        overlaps += part_overlaps
        if hist is not None:
            hist += part_hist
    if n_workers > 1:
        pool.shutdown()

    density = None
    if collect_density:
        density = DensityHistogram(counts=hist, edges=density_edges)
    return SymmetrizationResult(table, perms, grid, overlaps, n, density)
