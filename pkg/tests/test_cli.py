import json
import math

import numpy as np
import pytest

from harmonic_crystal.cli import (EXIT_ALL_POLES, EXIT_CONFIG, EXIT_OK,
                                  EXIT_RESOURCE, PRESETS, ConfigError,
                                  main, parse_config_file)


def write_config(tmp_path, text):
    path = tmp_path / "run.cfg"
    path.write_text(text)
    return str(path)


BASE_CONFIG = """
# two-particle test chain
n_particles = 2
kappa = 1.0
lambda = 1.0
delta_q = 1.0
material = neon
"""


class TestConfigParsing:
    def test_round_trip(self, tmp_path):
        values = parse_config_file(write_config(tmp_path, BASE_CONFIG))
        assert values == {"n_particles": 2, "kappa": 1.0, "lam": 1.0,
                          "delta_q": 1.0, "material": "neon"}

    def test_unknown_key(self, tmp_path):
        path = write_config(tmp_path, "frobnicate = 3\n")
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config_file(path)

    def test_missing_file(self):
        with pytest.raises(ConfigError):
            parse_config_file("/nonexistent/run.cfg")

    def test_empty_config_lists_required_keys(self, tmp_path, capsys):
        path = write_config(tmp_path, "# nothing here\n")
        code = main(["--config", path, "--out", str(tmp_path),
                     "spectrum", "--lmax", "5"])
        assert code == EXIT_CONFIG
        err = capsys.readouterr().err
        for key in ("n_particles", "kappa", "lambda", "delta_q"):
            assert key in err

    def test_bad_material(self, tmp_path):
        path = write_config(tmp_path, BASE_CONFIG + "material = argon\n")
        code = main(["--config", path, "--out", str(tmp_path),
                     "spectrum", "--lmax", "5"])
        assert code == EXIT_CONFIG


class TestPresets:
    def test_known_presets(self):
        assert set(PRESETS) == {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}

    def test_high_density_scenario_values(self):
        preset = PRESETS["fig6"]
        assert preset["n_particles"] == 4
        assert preset["kappa"] == 0.0
        assert preset["lam"] == 1.0
        assert preset["delta_q"] == pytest.approx(0.1)  # density 10
        assert preset["l_max"] == 3000
        assert preset["grid_points"] == 91
        assert preset["grid_spacing"] == pytest.approx(0.12)
        assert preset["d_max"] == 4

    def test_level_scenario_values(self):
        preset = PRESETS["fig2"]
        assert preset["n_particles"] == 4
        assert preset["kappa"] == preset["lam"] == 1.0
        assert preset["delta_q"] == 1.0
        assert preset["l_max"] == 5000


def read_csv(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


class TestSpectrumCommand:
    def test_csv_and_sidecar(self, tmp_path):
        path = write_config(tmp_path, BASE_CONFIG)
        code = main(["--config", path, "--out", str(tmp_path),
                     "spectrum", "--lmax", "12"])
        assert code == EXIT_OK
        header, rows = read_csv(tmp_path / "spectrum.csv")
        assert header == ["rank", "quanta", "energy"]
        assert len(rows) == 12
        assert rows[0][0] == "1"
        assert rows[0][1] == "0;0"
        ground = float(rows[0][2])
        assert ground == pytest.approx((math.sqrt(2) + 2) / 2, rel=1e-12)
        sidecar = json.loads((tmp_path / "spectrum.json").read_text())
        assert sidecar["config"]["l_max"] == 12
        assert "runtime_seconds" in sidecar
        assert "version" in sidecar

    def test_seventeen_digit_floats(self, tmp_path):
        path = write_config(tmp_path, BASE_CONFIG)
        main(["--config", path, "--out", str(tmp_path),
              "spectrum", "--lmax", "3"])
        _, rows = read_csv(tmp_path / "spectrum.csv")
        value = rows[0][2]
        assert float(value) == (math.sqrt(2) + 2) / 2
        assert len(value.replace(".", "").replace("-", "").lstrip("0")) >= 16

    def test_deterministic_bytes(self, tmp_path):
        path = write_config(tmp_path, BASE_CONFIG)
        main(["--config", path, "--out", str(tmp_path / "a"),
              "spectrum", "--lmax", "40"])
        main(["--config", path, "--out", str(tmp_path / "b"),
              "spectrum", "--lmax", "40"])
        assert (tmp_path / "a/spectrum.csv").read_bytes() == \
            (tmp_path / "b/spectrum.csv").read_bytes()


class TestPermutationsCommand:
    def test_dump(self, capsys, tmp_path):
        code = main(["--out", str(tmp_path), "permutations",
                     "--n", "4", "--dmax", "4"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        lines = [l for l in out.splitlines() if l.startswith("mapping=")]
        assert len(lines) == 9
        assert "total=9" in out
        assert "parity=even" in out and "parity=odd" in out
        assert "d_m=0" in out and "d_m=4" in out


class TestChiCommand:
    def test_chi_csv(self, tmp_path):
        path = write_config(tmp_path, BASE_CONFIG.replace(
            "delta_q = 1.0", "delta_q = 0.2"))
        code = main(["--config", path, "--out", str(tmp_path), "chi",
                     "--dmax", "2", "--lmax", "6"])
        assert code == EXIT_OK
        header, rows = read_csv(tmp_path / "chi.csv")
        assert header == ["rank", "energy", "chi_plus", "chi_minus"]
        assert len(rows) == 6
        chi_plus = float(rows[0][2])
        chi_minus = float(rows[0][3])
        assert chi_plus > 1.0 > chi_minus > 0.0
        assert chi_plus + chi_minus == pytest.approx(2.0, abs=2e-3)


class TestEnergyCommand:
    def test_sweep_csv(self, tmp_path):
        path = write_config(tmp_path, BASE_CONFIG)
        code = main(["--config", path, "--out", str(tmp_path), "energy",
                     "--dmax", "0", "--lmax", "200",
                     "--beta-min", "0.5", "--beta-max", "5",
                     "--beta-points", "7"])
        assert code == EXIT_OK
        header, rows = read_csv(tmp_path / "energy.csv")
        assert header == ["beta", "Z_plus", "Z_minus", "E_plus", "E_minus",
                          "E_classical", "variance", "pole_flag"]
        assert len(rows) == 7
        for row in rows:
            beta = float(row[0])
            assert float(row[5]) == pytest.approx(2.0 / beta, rel=1e-12)
            assert row[7] == "0"
            assert float(row[3]) == float(row[4])


class TestDensityCommand:
    def test_density_csv(self, tmp_path):
        path = write_config(tmp_path, BASE_CONFIG.replace(
            "delta_q = 1.0", "delta_q = 0.3"))
        code = main(["--config", path, "--out", str(tmp_path), "density",
                     "--dmax", "2", "--lmax", "20", "--beta", "1.5"])
        assert code == EXIT_OK
        header, rows = read_csv(tmp_path / "density.csv")
        assert header == ["r", "rho_plus", "rho_minus", "rho_unsym"]
        r = np.array([float(row[0]) for row in rows])
        rho_plus = np.array([float(row[1]) for row in rows])
        width = r[1] - r[0]
        assert rho_plus.sum() * width == pytest.approx(2.0, abs=1e-2)

    def test_density_requires_symmetrization(self, tmp_path):
        path = write_config(tmp_path, BASE_CONFIG)
        code = main(["--config", path, "--out", str(tmp_path), "density",
                     "--dmax", "0", "--lmax", "5"])
        assert code == EXIT_CONFIG


class TestResourceAndPoleExits:
    def test_memory_cap_exit(self, tmp_path):
        path = write_config(tmp_path, BASE_CONFIG)
        code = main(["--config", path, "--out", str(tmp_path),
                     "--memory-cap-bytes", "64", "chi",
                     "--dmax", "2", "--lmax", "50"])
        assert code == EXIT_RESOURCE

    def test_all_pole_sweep_exit(self, tmp_path, monkeypatch):
        import harmonic_crystal.cli as cli_mod

        def fake_chi(config, table, spectrum, params, collect_density=False):
            # chi- engineered to cancel at every beta in the sweep window
            chi_minus = np.zeros(len(table))
            chi_minus[0] = 1.0
            chi_minus[1] = -1.0
            return np.ones(len(table)), chi_minus, None

        monkeypatch.setattr(cli_mod, "_chi_arrays", fake_chi)
        path = write_config(tmp_path, BASE_CONFIG)
        code = main(["--config", path, "--out", str(tmp_path), "energy",
                     "--dmax", "2", "--lmax", "2",
                     "--beta-min", "1e-11", "--beta-max", "1e-10",
                     "--beta-points", "3"])
        assert code == EXIT_ALL_POLES

    def test_grid_validation_maps_to_config_error(self, tmp_path):
        path = write_config(tmp_path, BASE_CONFIG)
        code = main(["--config", path, "--out", str(tmp_path), "chi",
                     "--dmax", "2", "--lmax", "5",
                     "--grid-points", "11", "--grid-spacing", "0.14"])
        assert code == EXIT_CONFIG


class TestSpinDemoAndVerify:
    def test_spin_demo(self, capsys, tmp_path):
        code = main(["--out", str(tmp_path), "spin-demo"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "singlet-like" in out
        assert "triplet-like" in out
        assert "excluded" in out
        worst = float(out.strip().splitlines()[-1].split("=")[1])
        assert worst < 1e-12

    def test_verify(self, capsys, tmp_path):
        code = main(["--out", str(tmp_path), "verify"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out
        payload = json.loads((tmp_path / "verify.json").read_text())
        assert all(entry["passed"] for entry in payload)
