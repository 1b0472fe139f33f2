import math
import subprocess
import sys
from pathlib import Path

import pytest

from relkin.cli import emit_csv, main, run_scenario, selftest

REPO = Path(__file__).resolve().parent.parent
SCENARIOS = REPO / "scenarios"
GOLDEN = Path(__file__).resolve().parent / "golden"

GOLDEN_OUTPUTS = [
    ("boost_perpendicular.yaml", "boost_perpendicular.report.txt"),
    ("circular_thomas.yaml", "circular_thomas.report.txt"),
    ("transport_inertial.yaml", "transport_inertial.csv"),
    ("precess_center.yaml", "precess_center.csv"),
]


def parse_report(path: Path) -> dict:
    out = {}
    for line in path.read_text().splitlines():
        key, _, value = line.partition(" = ")
        out[key] = value
    return out


def read_csv(path: Path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = [[float(x) for x in line.split(",")] for line in lines[1:]]
    return header, rows


class TestGoldenRegeneration:
    @pytest.mark.parametrize("scenario,golden", GOLDEN_OUTPUTS)
    def test_byte_identical(self, scenario, golden, tmp_path):
        out = run_scenario(SCENARIOS / scenario, out_dir=tmp_path)
        assert out.read_bytes() == (GOLDEN / golden).read_bytes()

    def test_repeated_runs_are_deterministic(self, tmp_path):
        first = run_scenario(SCENARIOS / "precess_center.yaml", out_dir=tmp_path / "a")
        second = run_scenario(SCENARIOS / "precess_center.yaml", out_dir=tmp_path / "b")
        assert first.read_bytes() == second.read_bytes()


class TestReports:
    def test_perpendicular_angle_value(self, tmp_path):
        out = run_scenario(SCENARIOS / "boost_perpendicular.yaml", out_dir=tmp_path)
        report = parse_report(out)
        assert report["coplanar"] == "false"
        assert abs(float(report["angle_rad"]) - (-math.atan(0.225))) < 1e-9

    def test_collinear_velocities_give_zero_angle(self, tmp_path):
        scenario = tmp_path / "collinear.yaml"
        scenario.write_text(
            "kind: boost-compose\nvelocity1: [0.6, 0.0, 0.0]\nvelocity2: [0.9, 0.0, 0.0]\n"
        )
        report = parse_report(run_scenario(scenario, out_dir=tmp_path))
        assert report["coplanar"] == "true"
        assert abs(float(report["angle_rad"])) < 1e-8
        assert report["axis"] == "none"

    def test_circular_thomas_report(self, tmp_path):
        out = run_scenario(SCENARIOS / "circular_thomas.yaml", out_dir=tmp_path)
        report = parse_report(out)
        assert abs(float(report["closed_form_angle_rad"]) + math.pi / 2) < 1e-9
        assert abs(float(report["numeric_angle_rad"]) + math.pi / 2) < 1e-7
        assert abs(float(report["closed_minus_numeric_rad"])) < 1e-7


class TestCsvOutputs:
    def test_inertial_transport_rows_identical(self, tmp_path):
        out = run_scenario(SCENARIOS / "transport_inertial.yaml", out_dir=tmp_path)
        _, rows = read_csv(out)
        assert len(rows) == 11
        for row in rows[1:]:
            assert row[1:] == rows[0][1:]

    def test_center_precession_rate_column(self, tmp_path):
        out = run_scenario(SCENARIOS / "precess_center.yaml", out_dir=tmp_path)
        header, rows = read_csv(out)
        rate3 = header.index("rate_3")
        values = [row[rate3] for row in rows]
        assert max(values) - min(values) < 1e-8
        assert abs(values[0] + 0.15) < 1e-10

    def test_circular_transport_drift_columns_stay_small(self, tmp_path):
        scenario = tmp_path / "circ.yaml"
        scenario.write_text(
            "kind: transport\n"
            "worldline: {type: circular, omega: 0.6, rho: 1.0}\n"
            "gyro: [1.0, 0.0, 0.0]\n"
            "s_min: 0.0\ns_max: 8.37758\nn_points: 9\n"
        )
        out = run_scenario(scenario, out_dir=tmp_path)
        header, rows = read_csv(out)
        for row in rows:
            assert abs(row[header.index("vel_dot_z")]) < 1e-10
            assert abs(row[header.index("mag_drift")]) < 1e-10

    def test_emit_csv_empty_series(self, tmp_path):
        path = emit_csv(["a", "b"], [], tmp_path / "empty.csv")
        assert path.read_text() == "a,b\n"

    def test_emit_csv_single_row(self, tmp_path):
        path = emit_csv(["a", "b"], [[1.0, -0.5]], tmp_path / "one.csv")
        lines = path.read_text().splitlines()
        assert lines[0] == "a,b"
        assert lines[1] == "1.0000000000000000e+00,-5.0000000000000000e-01"


class TestCliProcess:
    def run_cli(self, *args):
        return subprocess.run(
            [sys.executable, "-m", "relkin", *args], capture_output=True, text=True
        )

    def test_run_and_exit_zero(self, tmp_path):
        result = self.run_cli("run", str(SCENARIOS / "boost_perpendicular.yaml"),
                              "--out", str(tmp_path))
        assert result.returncode == 0
        assert Path(result.stdout.strip()).exists()

    def test_malformed_yaml_exits_2(self, tmp_path):
        bad = tmp_path / "bad.yaml"
        bad.write_text("kind: [unclosed\n")
        result = self.run_cli("run", str(bad))
        assert result.returncode == 2
        assert "error code=2 kind=parse" in result.stderr

    def test_unknown_kind_exits_2(self, tmp_path):
        bad = tmp_path / "bad.yaml"
        bad.write_text("kind: warp\n")
        result = self.run_cli("run", str(bad))
        assert result.returncode == 2

    def test_missing_file_exits_2(self, tmp_path):
        result = self.run_cli("run", str(tmp_path / "nope.yaml"))
        assert result.returncode == 2

    def test_superluminal_speed_exits_3(self, tmp_path):
        bad = tmp_path / "fast.yaml"
        bad.write_text(
            "kind: boost-compose\nvelocity1: [1.2, 0.0, 0.0]\nvelocity2: [0.0, 0.5, 0.0]\n"
        )
        result = self.run_cli("run", str(bad))
        assert result.returncode == 3
        assert "error code=3 kind=constraint" in result.stderr

    def test_bad_n_points_exits_3(self, tmp_path):
        bad = tmp_path / "grid.yaml"
        bad.write_text(
            "kind: transport\n"
            "worldline: {type: inertial, velocity: [0.1, 0.0, 0.0]}\n"
            "gyro: [0.0, 1.0, 0.0]\n"
            "s_min: 0.0\ns_max: 1.0\nn_points: 1\n"
        )
        result = self.run_cli("run", str(bad))
        assert result.returncode == 3

    def test_drift_exits_4(self, tmp_path):
        bad = tmp_path / "coarse.yaml"
        bad.write_text(
            "kind: transport\n"
            "worldline: {type: circular, omega: 0.9, rho: 1.0}\n"
            "gyro: [1.0, 0.0, 0.0]\n"
            "s_min: 0.0\ns_max: 120.0\nn_points: 3\nstep: 1.0\n"
        )
        result = self.run_cli("run", str(bad))
        assert result.returncode == 4
        assert "error code=4 kind=drift" in result.stderr

    def test_env_var_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv("RELKIN_OUT", str(tmp_path / "envout"))
        out = run_scenario(SCENARIOS / "boost_perpendicular.yaml")
        assert out.parent == tmp_path / "envout"
        assert out.exists()


class TestSchemaValidation:
    def test_unknown_field_rejected(self, tmp_path):
        bad = tmp_path / "extra.yaml"
        bad.write_text(
            "kind: boost-compose\nvelocity1: [0.1,0,0]\nvelocity2: [0,0.1,0]\nbogus: 1\n"
        )
        assert main(["run", str(bad)]) == 2

    def test_center_frame_needs_circular_line(self, tmp_path):
        bad = tmp_path / "frame.yaml"
        bad.write_text(
            "kind: precess\n"
            "worldline: {type: inertial, velocity: [0.1, 0.0, 0.0]}\n"
            "frame: center\ngyro: [1.0, 0.0, 0.0]\n"
            "t_min: 0.0\nt_max: 1.0\nn_points: 3\n"
        )
        assert main(["run", str(bad)]) == 2

    def test_initial_frame_alias(self, tmp_path):
        for token in ("initial", "u0"):
            scenario = tmp_path / f"frame_{token}.yaml"
            scenario.write_text(
                "kind: precess\n"
                "worldline: {type: circular, omega: 0.6, rho: 1.0}\n"
                f"frame: {token}\ngyro: [1.0, 0.0, 0.0]\n"
                "t_min: 0.0\nt_max: 2.0\nn_points: 5\n"
            )
            out = run_scenario(scenario, out_dir=tmp_path / token)
            assert out.exists()

    def test_explicit_frame_velocity(self, tmp_path):
        scenario = tmp_path / "frame_vec.yaml"
        scenario.write_text(
            "kind: precess\n"
            "worldline: {type: circular, omega: 0.6, rho: 1.0}\n"
            "frame: [0.1, 0.2, 0.0]\ngyro: [1.0, 0.0, 0.0]\n"
            "t_min: 0.0\nt_max: 2.0\nn_points: 5\n"
        )
        assert run_scenario(scenario, out_dir=tmp_path).exists()

    def test_moving_center_with_plane(self, tmp_path):
        scenario = tmp_path / "moving.yaml"
        scenario.write_text(
            "kind: circular-thomas\n"
            "omega: 0.5\nrho: 1.0\n"
            "center_velocity: [0.2, 0.0, 0.1]\n"
            "plane: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]\n"
        )
        report = parse_report(run_scenario(scenario, out_dir=tmp_path))
        assert abs(float(report["time_dilation"]) - 1.0 / math.sqrt(1 - 0.25)) < 1e-12


def test_selftest_passes(capsys):
    assert selftest() == 0
    out = capsys.readouterr().out
    assert "selftest passed" in out
