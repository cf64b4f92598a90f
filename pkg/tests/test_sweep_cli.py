import xml.etree.ElementTree as ET

import numpy as np
import pytest

from tfim_phases.cli import main
from tfim_phases.phases import PhaseRecord
from tfim_phases.sweep import (
    CSV_HEADER,
    SweepConfig,
    SweepRecord,
    _unwrap_family,
    emit_csv,
    emit_svg,
    preset,
    read_csv,
    run_sweep,
)

THETA = np.pi / 3


def small_config(**overrides):
    base = dict(
        lambda_min=0.4, lambda_max=1.6, lambda_steps=3,
        r_list=(1,), theta_list=(THETA,),
        kinds=("interferometric",), loop_steps=64,
    )
    base.update(overrides)
    return SweepConfig(**base)


class TestRunSweep:
    def test_product_limit_point(self):
        config = small_config(lambda_min=1e-6, lambda_max=1e-6, lambda_steps=1)
        records = run_sweep(config)
        assert len(records) == 1
        assert records[0].status == "ok"
        assert abs(records[0].record.delta_gamma) <= 1e-6

    def test_grid_order(self):
        config = small_config(r_list=(10, 1), theta_list=(np.pi / 4, np.pi / 12))
        records = run_sweep(config)
        keys = [(x.theta, x.r, x.lam) for x in records]
        assert keys == sorted(keys)

    def test_rank_deficient_degrades_to_status_row(self):
        config = small_config(lambda_min=0.01, lambda_max=1.0, lambda_steps=2,
                              kinds=("uhlmann",))
        records = run_sweep(config)
        assert [x.status for x in records] == ["rank_deficient", "ok"]
        assert records[0].record.gamma_u_pair is None
        assert records[1].record.gamma_u_pair is not None

    def test_worker_counts_agree(self):
        config = small_config(kinds=("interferometric", "uhlmann"),
                              lambda_steps=2, loop_steps=64)
        serial = run_sweep(config, workers=1)
        parallel = run_sweep(config, workers=2)
        for a, b in zip(serial, parallel):
            assert a == b

    def test_unwrap_disabled_copies_principal(self):
        config = small_config(unwrap=False)
        for rec in run_sweep(config):
            assert rec.delta_gamma_unwrapped == rec.record.delta_gamma


class TestUnwrap:
    def test_jump_removed(self):
        values = [3.0, -3.0, -2.8, None, -2.6]
        records = [
            SweepRecord(lam=float(i), r=1, theta=THETA,
                        record=PhaseRecord(delta_gamma=v))
            for i, v in enumerate(values)
        ]
        _unwrap_family(records, "delta_gamma", "delta_gamma_unwrapped")
        got = [x.delta_gamma_unwrapped for x in records]
        assert got[0] == pytest.approx(3.0)
        assert got[1] == pytest.approx(-3.0 + 2 * np.pi)
        assert got[3] is None
        diffs = np.diff([g for g in got if g is not None])
        assert np.abs(diffs).max() < np.pi


class TestCsv:
    def test_header_exact(self):
        assert CSV_HEADER == (
            "lambda,r,theta,gamma_int_2site,gamma_int_1site,delta_gamma,"
            "delta_gamma_unwrapped,gamma_u_2site,gamma_u_1site,delta_gamma_u,"
            "delta_gamma_u_unwrapped,steps,quad_tol,status"
        )

    def test_empty_records(self, tmp_path):
        path = tmp_path / "empty.csv"
        emit_csv([], path)
        assert path.read_text() == CSV_HEADER + "\n"

    def test_ok_row_field_count(self, tmp_path):
        config = small_config(lambda_steps=1, kinds=("interferometric", "uhlmann"))
        records = run_sweep(config)
        path = tmp_path / "one.csv"
        emit_csv(records, path)
        lines = path.read_text().strip().split("\n")
        assert len(lines) == 2
        assert len(lines[1].split(",")) == len(CSV_HEADER.split(","))
        assert lines[1].endswith(",ok")

    def test_rank_deficient_row_has_empty_phases(self, tmp_path):
        config = small_config(lambda_min=0.01, lambda_max=0.01, lambda_steps=1,
                              kinds=("uhlmann",))
        records = run_sweep(config)
        path = tmp_path / "bad.csv"
        emit_csv(records, path)
        fields = path.read_text().strip().split("\n")[1].split(",")
        assert fields[3:11] == [""] * 8
        assert fields[13] == "rank_deficient"

    def test_round_trip_bit_identical(self, tmp_path):
        config = small_config(lambda_steps=3, kinds=("interferometric", "uhlmann"))
        records = run_sweep(config)
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(records, p1, quad_tol=config.quad_tol)
        parsed, quad_tol = read_csv(p1)
        emit_csv(parsed, p2, quad_tol=quad_tol)
        assert p1.read_bytes() == p2.read_bytes()


class TestSvg:
    def test_two_families(self, tmp_path):
        config = small_config(r_list=(1, 2))
        records = run_sweep(config)
        path = tmp_path / "plot.svg"
        emit_svg(records, path, y_column="delta_gamma")
        root = ET.parse(path).getroot()
        ns = "{http://www.w3.org/2000/svg}"
        polylines = root.findall(f"{ns}polyline")
        texts = [t.text for t in root.findall(f"{ns}text")]
        assert len(polylines) == 2
        assert sum(1 for t in texts if t and t.startswith("r=")) == 2

    def test_single_point_family_renders_marker(self, tmp_path):
        config = small_config(lambda_steps=1)
        path = tmp_path / "dot.svg"
        emit_svg(run_sweep(config), path, y_column="delta_gamma")
        root = ET.parse(path).getroot()
        assert len(root.findall("{http://www.w3.org/2000/svg}circle")) == 1

    def test_empty_selection_rejected(self, tmp_path):
        config = small_config()
        records = run_sweep(config)
        with pytest.raises(ValueError):
            emit_svg(records, tmp_path / "x.svg", y_column="delta_gamma_u")

    def test_unknown_column_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            emit_svg([], tmp_path / "x.svg", y_column="nope")


class TestPresets:
    def test_known_presets_validate(self):
        fig1 = preset("fig1")
        assert fig1.kinds == ("interferometric",)
        assert fig1.theta_list == (np.pi / 3,)
        assert fig1.lambda_min >= 0.1
        fig2 = preset("fig2")
        assert fig2.kinds == ("uhlmann",)
        assert set(fig2.theta_list) == {np.pi / 12, np.pi / 4, np.pi / 3}
        fig3 = preset("fig3")
        assert set(fig3.kinds) == {"interferometric", "uhlmann"}
        assert (fig3.lambda_min, fig3.lambda_max) == (0.8, 1.2)

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            preset("badname")


class TestConfigValidation:
    def test_bad_configs(self):
        with pytest.raises(ValueError):
            SweepConfig(lambda_min=-0.1)
        with pytest.raises(ValueError):
            SweepConfig(lambda_steps=0)
        with pytest.raises(ValueError):
            SweepConfig(r_list=())
        with pytest.raises(ValueError):
            SweepConfig(kinds=("nope",))
        with pytest.raises(ValueError):
            SweepConfig(lambda_min=2.0, lambda_max=1.0)


class TestCli:
    def test_correlators_command(self, capsys):
        assert main(["correlators", "--lam", "1.0", "--r", "1"]) == 0
        out = capsys.readouterr().out.strip().split("\n")
        assert out[0] == "r,m,c_xx,c_yy,c_zz"
        fields = out[1].split(",")
        assert float(fields[1]) == pytest.approx(2 / np.pi, abs=1e-9)
        assert float(fields[2]) == pytest.approx(2 / np.pi, abs=1e-9)

    def test_phase_command(self, capsys):
        code = main(["phase", "--lam", "1.5", "--r", "1", "--theta", str(THETA),
                     "--kinds", "interferometric"])
        assert code == 0
        out = capsys.readouterr().out
        assert "delta_gamma" in out
        assert "gamma_u_pair = n/a" in out

    def test_phase_command_rank_error(self, capsys):
        code = main(["phase", "--lam", "0.01", "--r", "1", "--theta", str(THETA),
                     "--kinds", "uhlmann", "--loop-steps", "64"])
        assert code == 1
        assert "rank_eps" in capsys.readouterr().err

    def test_sweep_command_with_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "sweep.cfg"
        cfg.write_text(
            "lambda_min = 0.4\n"
            "lambda_max = 1.6\n"
            "lambda_steps = 2\n"
            "r_list = 1\n"
            f"theta_list = {THETA}\n"
            "kinds = interferometric\n"
            "# a comment line\n"
        )
        out_csv = tmp_path / "out.csv"
        svg = tmp_path / "out.svg"
        code = main(["sweep", "--config", str(cfg), "--out", str(out_csv),
                     "--svg", str(svg), "--svg-y", "delta_gamma"])
        assert code == 0
        lines = out_csv.read_text().strip().split("\n")
        assert lines[0] == CSV_HEADER
        assert len(lines) == 3
        ET.parse(svg)

    def test_sweep_flags_override_config(self, tmp_path):
        cfg = tmp_path / "sweep.cfg"
        cfg.write_text("lambda_steps = 2\nkinds = interferometric\n")
        out_csv = tmp_path / "b.csv"
        code = main(["sweep", "--config", str(cfg), "--lam-min", "0.5",
                     "--lam-max", "0.5", "--lam-steps", "1",
                     "--r", "1", "--theta", str(THETA), "--out", str(out_csv)])
        assert code == 0
        assert len(out_csv.read_text().strip().split("\n")) == 2

    def test_sweep_requires_output(self, capsys):
        code = main(["sweep", "--lam-min", "0.5", "--lam-max", "0.5",
                     "--lam-steps", "1", "--kinds", "interferometric"])
        assert code == 1
        assert "output path" in capsys.readouterr().err

    def test_sweep_unwritable_path(self, tmp_path, capsys):
        code = main(["sweep", "--lam-min", "0.5", "--lam-max", "0.5",
                     "--lam-steps", "1", "--kinds", "interferometric",
                     "--out", str(tmp_path / "no" / "dir" / "x.csv")])
        assert code == 1

    def test_bad_config_key(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("frobnicate = 1\n")
        code = main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "x.csv")])
        assert code == 1
        assert "unknown config key" in capsys.readouterr().err

    def test_unknown_preset_name_exits_nonzero(self):
        with pytest.raises(SystemExit):
            main(["preset", "badname"])

    def test_preset_command_writes_outputs(self, tmp_path):
        assert main(["preset", "fig1", "--out-dir", str(tmp_path)]) == 0
        csv_lines = (tmp_path / "fig1.csv").read_text().strip().split("\n")
        assert csv_lines[0] == CSV_HEADER
        assert len(csv_lines) == 1 + 39 * 4
        ET.parse(tmp_path / "fig1_delta_gamma_unwrapped.svg")

    def test_oracle_command(self, capsys):
        code = main(["oracle", "--lam", "0.5", "--n-sites", "6", "8", "--r-max", "2"])
        assert code == 0
        out = capsys.readouterr().out
        assert "m_ed" in out
        assert "monotone" in out
