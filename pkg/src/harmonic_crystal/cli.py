"""Batch front-end: config parsing, scenario presets, CSV/JSON artifacts.

Exit codes: 0 success, 2 config error, 3 sweep with no finite fermion
point, 4 resource cap exceeded.  Output CSVs are deterministic for a
fixed configuration (17-significant-digit floats, fixed merge order in
the quadrature); each CSV gets a JSON sidecar recording the full
configuration, code version, and runtime.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .model import NEON, CrystalParams, UnitSystem
from .observables import (default_beta_grid, sweep_thermal,
                          thermal_density_profile)
from .oracle import report_json, report_table, run_verification
from .permutations import enumerate_permutations
from .spectrum import build_level_table, diagonalize
from .spin_pair import (SPIN_VALUES, ExclusionError, chi_pair, chi_tilde,
                        classify_state, exact_symmetrized,
                        factorized_symmetrized)
from .symmetrization import (DEFAULT_GRID, DENSE_GRID, MemoryBoundError,
                             PoleError, QuadratureGrid, WORKERS_ENV_VAR,
                             compute_overlaps)

__all__ = ["main", "run", "RunConfig", "ConfigError", "PRESETS"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ALL_POLES = 3
EXIT_RESOURCE = 4

_MODEL_KEYS = ("n_particles", "kappa", "lambda", "delta_q")

# Scenario presets matching the published figure parameters.
PRESETS = {
    "fig2": dict(n_particles=4, kappa=1.0, lam=1.0, delta_q=1.0,
                 l_max=5000, d_max=0,
                 grid_points=DEFAULT_GRID[0], grid_spacing=DEFAULT_GRID[1]),
    "fig3": dict(n_particles=4, kappa=1.0, lam=1.0, delta_q=1.0,
                 l_max=5000, d_max=0,
                 grid_points=DEFAULT_GRID[0], grid_spacing=DEFAULT_GRID[1]),
    "fig4": dict(n_particles=4, kappa=0.0, lam=0.02, delta_q=1.0,
                 l_max=5000, d_max=2,
                 grid_points=DEFAULT_GRID[0], grid_spacing=DEFAULT_GRID[1]),
    "fig5": dict(n_particles=4, kappa=0.0, lam=0.02, delta_q=1.0,
                 l_max=5000, d_max=2, beta=2.0,
                 grid_points=DEFAULT_GRID[0], grid_spacing=DEFAULT_GRID[1]),
    "fig6": dict(n_particles=4, kappa=0.0, lam=1.0, delta_q=0.1,
                 l_max=3000, d_max=4,
                 grid_points=DENSE_GRID[0], grid_spacing=DENSE_GRID[1]),
    "fig7": dict(n_particles=4, kappa=0.0, lam=1.0, delta_q=0.1,
                 l_max=5000, d_max=2, beta=1.0,
                 grid_points=DEFAULT_GRID[0], grid_spacing=DEFAULT_GRID[1]),
}


class ConfigError(ValueError):
    """Invalid or incomplete run configuration."""


@dataclass
class RunConfig:
    """Everything needed to reproduce one batch run."""

    command: str
    n_particles: int | None = None
    kappa: float | None = None
    lam: float | None = None
    delta_q: float | None = None
    material: str = "neon"
    l_max: int = 500
    d_max: int | None = 0
    grid_points: int = DEFAULT_GRID[0]
    grid_spacing: float = DEFAULT_GRID[1]
    beta: float = 1.0
    beta_min: float = 0.05
    beta_max: float = 10.0
    beta_points: int = 60
    out_dir: str = "."
    workers: int | None = None
    memory_cap_bytes: int = 2 << 30
    preset: str | None = None
    perm_n: int | None = None

    def require_model(self):
        missing = [key for key, value in (
            ("n_particles", self.n_particles), ("kappa", self.kappa),
            ("lambda", self.lam), ("delta_q", self.delta_q),
        ) if value is None]
        if missing:
            raise ConfigError(
                "missing required keys: " + ", ".join(missing)
                + " (set them in the config file, a preset, or flags)")

    def params(self) -> CrystalParams:
        self.require_model()
        if self.material != "neon":
            raise ConfigError(f"unknown material preset: {self.material!r}")
        try:
            return CrystalParams(n_particles=self.n_particles,
                                 kappa=self.kappa, lam=self.lam,
                                 delta_q=self.delta_q, units=NEON)
        except ValueError as err:
            raise ConfigError(str(err)) from err

    def grid(self, dimension: int) -> QuadratureGrid:
        try:
            return QuadratureGrid(self.grid_points, self.grid_spacing,
                                  dimension)
        except ValueError as err:
            raise ConfigError(str(err)) from err

    def as_dict(self) -> dict:
        out = {}
        for key, value in self.__dict__.items():
            out[key] = value
        return out


def parse_config_file(path: str) -> dict:
    """Plain key = value lines; '#' starts a comment."""
    values = {}
    try:
        text = open(path).read()
    except OSError as err:
        raise ConfigError(f"cannot read config file: {err}") from err
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "n_particles":
            values["n_particles"] = int(value)
        elif key == "kappa":
            values["kappa"] = float(value)
        elif key == "lambda":
            values["lam"] = float(value)
        elif key == "delta_q":
            values["delta_q"] = float(value)
        elif key == "material":
            values["material"] = value
        else:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return values


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _write_csv(path: str, header, rows):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def _write_sidecar(csv_path: str, config: RunConfig, started: float):
    sidecar = csv_path[: -len(".csv")] + ".json" if csv_path.endswith(".csv") \
        else csv_path + ".json"
    payload = {
        "config": config.as_dict(),
        "version": __version__,
        "runtime_seconds": time.time() - started,
        "workers": config.workers
        or int(os.environ.get(WORKERS_ENV_VAR, "1")),
    }
    with open(sidecar, "w") as fh:
        json.dump(payload, fh, indent=2, default=str)
    return sidecar


def _chi_arrays(config: RunConfig, table, spectrum, params,
                collect_density=False):
    """chi_plus/chi_minus per level for the configured metric cutoff."""
    if config.d_max == 0:
        ones = np.ones(len(table))
        return ones, ones, None
    perms = enumerate_permutations(params.n_particles, config.d_max)
    grid = config.grid(params.n_particles)
    result = compute_overlaps(
        table, perms, grid, spectrum, params,
        collect_density=collect_density, workers=config.workers,
        memory_cap_bytes=config.memory_cap_bytes)
    return result.chi_plus, result.chi_minus, result


def _cmd_spectrum(config: RunConfig):
    params = config.params()
    spectrum = diagonalize(params)
    table = build_level_table(spectrum, config.l_max)
    rows = [
        (rank, ";".join(str(int(q)) for q in table.quanta[rank - 1]),
         float(table.energies[rank - 1]))
        for rank in range(1, len(table) + 1)
    ]
    path = os.path.join(config.out_dir, "spectrum.csv")
    _write_csv(path, ["rank", "quanta", "energy"], rows)
    return [path], EXIT_OK


def _cmd_permutations(config: RunConfig):
    n = config.perm_n if config.perm_n is not None else config.n_particles
    if n is None:
        raise ConfigError("permutations needs --n or n_particles")
    perms = enumerate_permutations(n, config.d_max)
    for p in perms:
        mapping = ",".join(str(i + 1) for i in p.mapping)
        print(f"mapping={mapping} parity={'odd' if p.parity else 'even'} "
              f"d_m={p.metric_length}")
    print(f"total={len(perms)}")
    return [], EXIT_OK


def _cmd_chi(config: RunConfig):
    params = config.params()
    spectrum = diagonalize(params)
    table = build_level_table(spectrum, config.l_max)
    chi_plus, chi_minus, _ = _chi_arrays(config, table, spectrum, params)
    rows = [
        (rank, float(table.energies[rank - 1]),
         float(chi_plus[rank - 1]), float(chi_minus[rank - 1]))
        for rank in range(1, len(table) + 1)
    ]
    path = os.path.join(config.out_dir, "chi.csv")
    _write_csv(path, ["rank", "energy", "chi_plus", "chi_minus"], rows)
    return [path], EXIT_OK


def _cmd_energy(config: RunConfig):
    params = config.params()
    spectrum = diagonalize(params)
    table = build_level_table(spectrum, config.l_max)
    chi_plus, chi_minus, _ = _chi_arrays(config, table, spectrum, params)
    betas = default_beta_grid(config.beta_min, config.beta_max,
                              config.beta_points)
    points = sweep_thermal(table, chi_plus, chi_minus, betas,
                           params.n_particles)
    rows = [
        (p.beta, p.z_plus, p.z_minus, p.e_plus, p.e_minus,
         p.e_classical, p.variance, int(p.pole_flag))
        for p in points
    ]
    path = os.path.join(config.out_dir, "energy.csv")
    _write_csv(path, ["beta", "Z_plus", "Z_minus", "E_plus", "E_minus",
                      "E_classical", "variance", "pole_flag"], rows)
    all_fermion_poles = all(p.pole_minus for p in points)
    return [path], (EXIT_ALL_POLES if all_fermion_poles else EXIT_OK)


def _cmd_density(config: RunConfig):
    params = config.params()
    spectrum = diagonalize(params)
    table = build_level_table(spectrum, config.l_max)
    if config.d_max == 0:
        raise ConfigError("density needs d_max >= 2 "
                          "(use 0-metric chi via the energy command)")
    perms = enumerate_permutations(params.n_particles, config.d_max)
    grid = config.grid(params.n_particles)
    result = compute_overlaps(
        table, perms, grid, spectrum, params, collect_density=True,
        workers=config.workers, memory_cap_bytes=config.memory_cap_bytes)
    centers, rho_plus = thermal_density_profile(result, table, config.beta, +1)
    try:
        _, rho_minus = thermal_density_profile(result, table, config.beta, -1)
    except PoleError:
        rho_minus = np.full_like(rho_plus, math.nan)
    _, rho_unsym = thermal_density_profile(result, table, config.beta, +1,
                                           d_max=0)
    rows = list(zip(centers, rho_plus, rho_minus, rho_unsym))
    path = os.path.join(config.out_dir, "density.csv")
    _write_csv(path, ["r", "rho_plus", "rho_minus", "rho_unsym"], rows)
    return [path], EXIT_OK


def _cmd_spin_demo(config: RunConfig):
    del config
    grid = np.linspace(-3.0, 3.0, 13)
    print(f"{'n':>8} {'s':>12} {'class':>14} {'chi':>5} {'chi~':>5} "
          f"{'max |exact - factorized|':>26}")
    worst = 0.0
    for n1 in range(4):
        for n2 in range(4):
            for s in ((a, b) for a in SPIN_VALUES for b in SPIN_VALUES):
                n = (n1, n2)
                label = classify_state(n, s)
                if label == "excluded":
                    print(f"{str(n):>8} {str(s):>12} {label:>14} "
                          f"{chi_pair(n, s, -1):>5} {chi_tilde(n, s, -1):>5} "
                          f"{'-':>26}")
                    continue
                diff = 0.0
                for q1 in grid:
                    for q2 in grid:
                        for sigma in ((a, b) for a in SPIN_VALUES
                                      for b in SPIN_VALUES):
                            try:
                                e = exact_symmetrized(n, s, (q1, q2), sigma, -1)
                                f = factorized_symmetrized(n, s, (q1, q2),
                                                           sigma, -1)
                            except ExclusionError:
                                continue
                            diff = max(diff, abs(e - f))
                worst = max(worst, diff)
                print(f"{str(n):>8} {str(s):>12} {label:>14} "
                      f"{chi_pair(n, s, -1):>5} {chi_tilde(n, s, -1):>5} "
                      f"{diff:>26.3e}")
    print(f"worst-case |exact - factorized| = {worst:.3e}")
    return [], EXIT_OK


def _cmd_verify(config: RunConfig):
    reports = run_verification()
    print(report_table(reports))
    path = os.path.join(config.out_dir, "verify.json")
    with open(path, "w") as fh:
        fh.write(report_json(reports))
    ok = all(r.passed for r in reports)
    return [path], (EXIT_OK if ok else 1)


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "permutations": _cmd_permutations,
    "chi": _cmd_chi,
    "energy": _cmd_energy,
    "density": _cmd_density,
    "spin-demo": _cmd_spin_demo,
    "verify": _cmd_verify,
}


def run(config: RunConfig) -> tuple[list[str], int]:
    """Dispatch one configured run; returns (output files, exit code)."""
    started = time.time()
    os.makedirs(config.out_dir, exist_ok=True)
    files, code = _COMMANDS[config.command](config)
    outputs = list(files)
    for path in files:
        if path.endswith(".csv"):
            outputs.append(_write_sidecar(path, config, started))
    return outputs, code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonic-crystal",
        description="One-dimensional harmonic crystal: spectrum, "
                    "symmetrization factors, and thermal observables.")
    parser.add_argument("--config", help="key = value configuration file")
    parser.add_argument("--preset", choices=sorted(PRESETS),
                        help="figure scenario preset")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--workers", type=int, default=None,
                        help=f"quadrature workers (or ${WORKERS_ENV_VAR})")
    parser.add_argument("--memory-cap-bytes", type=int, default=2 << 30,
                        help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_flags(p):
        p.add_argument("--n-particles", type=int)
        p.add_argument("--kappa", type=float)
        p.add_argument("--lambda", dest="lam", type=float)
        p.add_argument("--delta-q", type=float)

    p = sub.add_parser("spectrum", help="energy-ordered level table CSV")
    add_model_flags(p)
    p.add_argument("--lmax", type=int)

    p = sub.add_parser("permutations", help="dump permutations with parity and d_m")
    p.add_argument("--n", type=int)
    p.add_argument("--dmax", default="all")

    p = sub.add_parser("chi", help="symmetrization factors per level CSV")
    add_model_flags(p)
    p.add_argument("--dmax", default="2")
    p.add_argument("--lmax", type=int)
    p.add_argument("--grid-points", type=int)
    p.add_argument("--grid-spacing", type=float)

    p = sub.add_parser("energy", help="thermal sweep CSV")
    add_model_flags(p)
    p.add_argument("--dmax", default="0")
    p.add_argument("--lmax", type=int)
    p.add_argument("--grid-points", type=int)
    p.add_argument("--grid-spacing", type=float)
    p.add_argument("--beta-min", type=float)
    p.add_argument("--beta-max", type=float)
    p.add_argument("--beta-points", type=int)

    p = sub.add_parser("density", help="thermal density profile CSV")
    add_model_flags(p)
    p.add_argument("--dmax", default="2")
    p.add_argument("--lmax", type=int)
    p.add_argument("--grid-points", type=int)
    p.add_argument("--grid-spacing", type=float)
    p.add_argument("--beta", type=float)

    sub.add_parser("spin-demo", help="two-particle spin-position table")
    sub.add_parser("verify", help="run the oracle cross-check suite")
    return parser


def _parse_dmax(raw) -> int | None:
    if raw is None:
        return 0
    if isinstance(raw, int):
        return raw
    if raw == "all":
        return None
    try:
        value = int(raw)
    except ValueError as err:
        raise ConfigError(f"bad --dmax value: {raw!r}") from err
    if value < 0:
        raise ConfigError("--dmax must be non-negative or 'all'")
    return value


def _build_config(args) -> RunConfig:
    config = RunConfig(command=args.command)
    if args.preset:
        config.preset = args.preset
        for key, value in PRESETS[args.preset].items():
            setattr(config, key, value)
    if args.config:
        for key, value in parse_config_file(args.config).items():
            setattr(config, key, value)
    for flag, attr in (("n_particles", "n_particles"), ("kappa", "kappa"),
                       ("lam", "lam"), ("delta_q", "delta_q"),
                       ("lmax", "l_max"),
                       ("grid_points", "grid_points"),
                       ("grid_spacing", "grid_spacing"),
                       ("beta", "beta"), ("beta_min", "beta_min"),
                       ("beta_max", "beta_max"),
                       ("beta_points", "beta_points"), ("n", "perm_n")):
        value = getattr(args, flag, None)
        if value is not None:
            setattr(config, attr, value)
    if hasattr(args, "dmax") and args.dmax is not None:
        config.d_max = _parse_dmax(args.dmax)
    config.out_dir = args.out
    config.workers = args.workers
    config.memory_cap_bytes = args.memory_cap_bytes
    return config


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _build_config(args)
        _, code = run(config)
        return code
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except MemoryBoundError as err:
        print(f"resource cap: {err}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
