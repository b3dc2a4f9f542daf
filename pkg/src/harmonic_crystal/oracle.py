"""Independent brute-force references for cross-checking the main paths.

Every routine here deliberately avoids the analytic formulas and
quadrature kernels it validates: eigenpairs come from cyclic Jacobi
rotations, level tables from exhaustive enumeration, overlaps from
seeded Monte Carlo with an independent Hermite evaluation, and Hermite
spot values from 80-digit arithmetic.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import mpmath
import numpy as np
from scipy.special import eval_hermite

from .model import CrystalParams, PotentialMatrix, build_potential_matrix
from .permutations import Permutation
from .spectrum import LevelTable, ModeSpectrum, diagonalize

__all__ = [
    "OracleReport",
    "ConvergenceError",
    "numeric_eigen",
    "exhaustive_levels",
    "mc_overlap",
    "hermite_reference",
    "run_verification",
    "report_table",
]


class ConvergenceError(RuntimeError):
    """Iterative diagonalization failed to converge in the sweep budget."""


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    main_value: float
    oracle_value: float
    discrepancy: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.discrepancy <= self.tolerance


def numeric_eigen(matrix, max_sweeps: int = 50):
    """Eigenpairs of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, eigenvector columns).  Raises
    ConvergenceError if the off-diagonal norm has not vanished after
    max_sweeps sweeps.
    """
    if isinstance(matrix, PotentialMatrix):
        a = matrix.as_array()
    else:
        a = np.array(matrix, dtype=float, copy=True)
    n = len(a)
    if n > 64:
        raise ValueError("oracle diagonalizer limited to n <= 64")
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v

    for _ in range(max_sweeps):
        off = math.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off < 1e-14 * max(1.0, np.abs(a.diagonal()).max()):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[p, p] - a[q, q]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s, c]])
                a[[p, q], :] = rot @ a[[p, q], :]
                a[:, [p, q]] = a[:, [p, q]] @ rot.T
                v[:, [p, q]] = v[:, [p, q]] @ rot.T
    else:
        raise ConvergenceError(f"no convergence after {max_sweeps} sweeps")

    w = a.diagonal().copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def exhaustive_levels(spectrum: ModeSpectrum, quanta_cap: int,
                      l_max: int | None = None) -> LevelTable:
    """Level table by enumerating the full quanta box and sorting.

    Every vector with each quantum number <= quanta_cap is generated,
    sorted by (energy, lexicographic quanta), and truncated.  Energies
    accumulate in ascending mode order so ordering compares the same
    floats as the incremental builder.
    """
    n = spectrum.n_modes
    total = (quanta_cap + 1) ** n
    if total > 10**8:
        raise ValueError(f"enumeration of {total} states exceeds the cap")
    grids = np.indices((quanta_cap + 1,) * n)
    quanta = grids.reshape(n, -1).T.astype(np.int32)
    energies = np.zeros(total)
    for i in range(n):
        energies = energies + (quanta[:, i] + 0.5) * spectrum.omega[i]
    keys = tuple(quanta[:, i] for i in reversed(range(n))) + (energies,)
    order = np.lexsort(keys)
    if l_max is not None:
        order = order[:l_max]
    return LevelTable(quanta[order], energies[order])


def _phi_direct(degree: int, x: np.ndarray) -> np.ndarray:
    # Direct closed form; safe for the modest degrees used in sampling.
    norm = math.sqrt(2.0**degree * math.factorial(degree) * math.sqrt(math.pi))
    return eval_hermite(degree, x) * np.exp(-0.5 * x * x) / norm


def mc_overlap(quanta, perm: Permutation, spectrum: ModeSpectrum,
               params: CrystalParams, samples: int = 100_000,
               seed: int = 0, batch: int = 1_000_000):
    """Monte Carlo estimate of the permuted-state overlap.

    Draws mode vectors from the ground-state Gaussian and reweights.
    Returns (estimate, standard_error); fixed seeds give bit-identical
    results (PCG64 generator).
    """
    if samples < 10_000:
        raise ValueError("use at least 10^4 samples")
    n = spectrum.n_modes
    if len(quanta) != n:
        raise ValueError("quanta length must match the mode count")
    rng = np.random.default_rng(seed)
    mapping = list(perm.mapping)
    lattice = params.lattice()

    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        m = min(batch, samples - done)
        Q = rng.normal(0.0, math.sqrt(0.5), size=(m, n))
        # positions, permuted positions, permuted-mode vector
        q = lattice + (Q / spectrum.scale) @ spectrum.X.T
        Qp = spectrum.scale * ((q[:, mapping] - lattice) @ spectrum.X)
        values = np.ones(m)
        g = np.ones(m)
        for i in range(n):
            values *= _phi_direct(int(quanta[i]), Q[:, i])
            values *= _phi_direct(int(quanta[i]), Qp[:, i])
            g *= np.exp(-Q[:, i] ** 2) / math.sqrt(math.pi)
        w = values / g
        total += float(w.sum())
        total_sq += float((w * w).sum())
        done += m

    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    stderr = math.sqrt(var / samples)
    return mean, stderr


def hermite_reference(degree: int, x: float, dps: int = 80) -> float:
    """Hermite function by the closed form in dps-digit arithmetic."""
    with mpmath.workdps(dps):
        xx = mpmath.mpf(x)
        value = (mpmath.hermite(degree, xx) * mpmath.e**(-xx * xx / 2)
                 / mpmath.sqrt(2**degree * mpmath.factorial(degree)
                               * mpmath.sqrt(mpmath.pi)))
        return float(value)


def run_verification(params: CrystalParams | None = None) -> list[OracleReport]:
    """Cross-check battery used by the verify command."""
    from .permutations import enumerate_permutations
    from .spectrum import build_level_table
    from .symmetrization import QuadratureGrid, compute_overlaps
    from .wavefunctions import hermite_function

    if params is None:
        params = CrystalParams(n_particles=4, kappa=1.0, lam=1.0, delta_q=1.0)
    reports = []

    spec = diagonalize(params)
    w, v = numeric_eigen(build_potential_matrix(params))
    analytic = np.sort(spec.mu)
    reports.append(OracleReport(
        quantity=f"eigenvalues (N={params.n_particles})",
        main_value=float(spec.mu[0]),
        oracle_value=float(w[-1]),
        discrepancy=float(np.abs(analytic - w).max()),
        tolerance=1e-10,
    ))
    residual = float(np.abs(
        build_potential_matrix(params).as_array() @ spec.X
        - spec.X * spec.mu[None, :]).max())
    reports.append(OracleReport(
        quantity="eigenvector residual",
        main_value=residual, oracle_value=0.0,
        discrepancy=residual, tolerance=1e-10,
    ))

    table = build_level_table(spec, 500)
    brute = exhaustive_levels(spec, quanta_cap=20, l_max=500)
    mismatches = float(np.count_nonzero(table.quanta != brute.quanta))
    reports.append(OracleReport(
        quantity="level ordering (500 levels)",
        main_value=0.0, oracle_value=0.0,
        discrepancy=mismatches, tolerance=0.0,
    ))

    main60 = hermite_function(60, 1.3)
    ref60 = hermite_reference(60, 1.3)
    reports.append(OracleReport(
        quantity="hermite degree 60 at Q=1.3",
        main_value=main60, oracle_value=ref60,
        discrepancy=abs(main60 - ref60) / abs(ref60),
        tolerance=1e-10,
    ))

    pair = CrystalParams(n_particles=2, kappa=0.0, lam=1.0, delta_q=0.1,
                         units=params.units)
    pair_spec = diagonalize(pair)
    perms = enumerate_permutations(2)
    pair_table = build_level_table(pair_spec, 1)
    grid = QuadratureGrid(71, 0.14, 2)
    result = compute_overlaps(pair_table, perms, grid, pair_spec, pair)
    swap_index = 1 - perms.identity_index
    grid_value = float(result.overlaps[0, swap_index])
    mc_value, mc_err = mc_overlap((0, 0), perms[swap_index], pair_spec, pair,
                                  samples=400_000, seed=20260809)
    reports.append(OracleReport(
        quantity="ground-state swap overlap (N=2)",
        main_value=grid_value, oracle_value=mc_value,
        discrepancy=abs(grid_value - mc_value),
        tolerance=3.0 * mc_err,
    ))
    return reports


def report_table(reports: list[OracleReport]) -> str:
    lines = [f"{'quantity':<36} {'main':>15} {'oracle':>15} "
             f"{'diff':>12} {'tol':>12} result"]
    for r in reports:
        lines.append(
            f"{r.quantity:<36} {r.main_value:>15.8g} {r.oracle_value:>15.8g} "
            f"{r.discrepancy:>12.3e} {r.tolerance:>12.3e} "
            f"{'PASS' if r.passed else 'FAIL'}"
        )
    return "\n".join(lines)


def report_json(reports: list[OracleReport]) -> str:
    payload = [dict(asdict(r), passed=r.passed) for r in reports]
    return json.dumps(payload, indent=2)
