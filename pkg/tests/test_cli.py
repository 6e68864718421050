import json
import math

import numpy as np
import pytest

from tsmorph import ForecasterSpec, TimeSeries, alpha_schedule, run_experiment
from tsmorph.corpus import load_corpus, read_series_csv, write_series_csv

from conftest import make_sine, run_cli
from test_analysis import tiny_corpus


def write_fixture(path, values, sid=None):
    write_series_csv(path, TimeSeries(np.array(values, dtype=float), id=sid))
    return path


def write_corpus_dir(tmp_path, corpus):
    corpus_dir = tmp_path / "corpus"
    corpus_dir.mkdir()
    for s in corpus:
        write_series_csv(corpus_dir / f"{s.id}.csv", s)
    return corpus_dir


class TestMorphCommand:
    def test_three_steps_endpoint_bit_identical(self, tmp_path):
        rng = np.random.default_rng(2)
        source = write_fixture(tmp_path / "source.csv", rng.uniform(size=20))
        target = write_fixture(tmp_path / "target.csv", rng.uniform(size=20))
        out_dir = tmp_path / "out"
        proc = run_cli("morph", "--source", source, "--target", target, "-n", 3, "-o", out_dir)
        assert proc.returncode == 0, proc.stderr
        files = sorted(p.name for p in out_dir.glob("*.csv"))
        assert files == ["step_000.csv", "step_001.csv", "step_002.csv"]
        step0 = read_series_csv(out_dir / "step_000.csv")
        original = read_series_csv(source)
        assert step0.values.tolist() == original.values.tolist()
        meta = json.loads((out_dir / "morph_meta.json").read_text())
        assert meta["alphas"] == [0.0, 0.5, 1.0]
        assert meta["n"] == 3

    def test_length_mismatch_exits_2(self, tmp_path):
        source = write_fixture(tmp_path / "source.csv", [1.0, 2.0, 3.0])
        target = write_fixture(tmp_path / "target.csv", [1.0, 2.0])
        proc = run_cli("morph", "--source", source, "--target", target, "-n", 3, "-o", tmp_path / "o")
        assert proc.returncode == 2
        assert "length mismatch" in proc.stderr

    def test_long_fixtures_full_round_trip(self, tmp_path):
        rng = np.random.default_rng(3)
        source_values = rng.uniform(size=735)
        target_values = rng.uniform(size=735)
        source = write_fixture(tmp_path / "source.csv", source_values)
        target = write_fixture(tmp_path / "target.csv", target_values)
        out_dir = tmp_path / "morphs"
        proc = run_cli("morph", "--source", source, "--target", target, "-n", 11, "-o", out_dir)
        assert proc.returncode == 0, proc.stderr
        meta = json.loads((out_dir / "morph_meta.json").read_text())
        assert meta["alphas"] == alpha_schedule(11)
        _, reloaded = load_corpus(out_dir)
        assert len(reloaded) == 11
        assert all(len(s) == 735 for s in reloaded)
        # files sort lexicographically as step_000..step_010
        expected_mid = 0.5 * (source_values + target_values)
        np.testing.assert_array_equal(reloaded[5].values, expected_mid)

    def test_interpolate_flag(self, tmp_path):
        source = tmp_path / "source.csv"
        source.write_text("t,value\n0,1.0\n1,\n2,3.0\n", encoding="utf-8")
        target = write_fixture(tmp_path / "target.csv", [0.0, 0.0, 0.0])
        out_dir = tmp_path / "o"
        proc = run_cli("morph", "--source", source, "--target", target, "-n", 2, "-o", out_dir)
        assert proc.returncode == 2  # incomplete without --interpolate
        proc = run_cli(
            "morph", "--source", source, "--target", target, "-n", 2, "-o", out_dir,
            "--interpolate",
        )
        assert proc.returncode == 0, proc.stderr
        assert read_series_csv(out_dir / "step_000.csv").values.tolist() == [1.0, 2.0, 3.0]


class TestFeaturesCommand:
    def test_cosine_fixture(self, tmp_path):
        fixture = write_fixture(
            tmp_path / "cos8.csv", np.cos(2 * np.pi * np.arange(256) / 8)
        )
        proc = run_cli("features", fixture)
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(proc.stdout.splitlines()[0])
        assert doc["centroid_frequency"] == pytest.approx(0.7854, abs=0.03)
        assert list(doc) == [
            "forecast_error", "centroid_frequency", "low_frequency_power",
            "whiten_timescale", "mean", "std", "acf_lag1",
        ]

    def test_one_line_per_input(self, tmp_path):
        a = write_fixture(tmp_path / "a.csv", np.cos(2 * np.pi * np.arange(64) / 8))
        b = write_fixture(tmp_path / "b.csv", np.sin(2 * np.pi * np.arange(64) / 16))
        proc = run_cli("features", a, b)
        lines = [ln for ln in proc.stdout.splitlines() if ln]
        assert len(lines) == 2
        for line in lines:
            json.loads(line)

    def test_constant_series_is_runtime_error(self, tmp_path):
        fixture = write_fixture(tmp_path / "flat.csv", [1.0] * 32)
        proc = run_cli("features", fixture)
        assert proc.returncode == 3
        assert proc.stderr.strip()


class TestEvaluateCommand:
    def test_record_json(self, tmp_path):
        fixture = write_fixture(tmp_path / "r.csv", list(np.arange(1.0, 11.0)), sid="r")
        proc = run_cli(
            "evaluate", "--input", fixture, "--forecaster", "naive",
            "--horizon", 2, "--season", 1,
        )
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(proc.stdout)
        assert doc["mase"] == 1.5
        assert doc["forecasts"] == [8.0, 8.0]
        assert doc["forecaster"] == {"kind": "naive", "params": {}}

    def test_missing_horizon_exits_2_with_usage(self, tmp_path):
        fixture = write_fixture(tmp_path / "r.csv", [1.0, 2.0, 3.0])
        proc = run_cli("evaluate", "--input", fixture, "--forecaster", "naive")
        assert proc.returncode == 2
        assert "usage" in proc.stderr.lower()

    def test_param_passing(self, tmp_path):
        fixture = write_fixture(tmp_path / "s.csv", [1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
        proc = run_cli(
            "evaluate", "--input", fixture, "--forecaster", "seasonal_naive",
            "--param", "m=2", "--horizon", 2,
        )
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(proc.stdout)
        assert doc["forecaster"]["params"] == {"m": 2}
        assert doc["forecasts"] == [3.0, 4.0]


class TestAnalyzeCommand:
    def test_report_matches_library(self, tmp_path):
        corpus_dir = write_corpus_dir(tmp_path, tiny_corpus())
        out = tmp_path / "report.json"
        proc = run_cli(
            "analyze", "--corpus", corpus_dir, "--forecaster", "seasonal_naive",
            "--param", "m=8", "--horizon", 16, "--season", 1,
            "-n", 3, "--pairs", 1, "-o", out, "--seed", 5,
        )
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(out.read_text())
        expected = run_experiment(
            tiny_corpus(), ForecasterSpec("seasonal_naive", {"m": 8}),
            horizon=16, season=1, n=3, pairs=1, seed=5,
        ).to_json()
        assert doc == expected

    def test_all_series_failed_exits_3(self, tmp_path):
        corpus_dir = tmp_path / "corpus"
        corpus_dir.mkdir()
        for i in range(2):
            write_fixture(corpus_dir / f"flat{i}.csv", [float(i)] * 40)
        proc = run_cli(
            "analyze", "--corpus", corpus_dir, "--forecaster", "naive",
            "--horizon", 8, "-n", 3, "--pairs", 1,
        )
        assert proc.returncode == 3
        assert proc.stderr.strip()

    def test_determinism_across_jobs(self, tmp_path):
        corpus_dir = write_corpus_dir(tmp_path, tiny_corpus())
        outputs = []
        for name, jobs in [("r1.json", 1), ("r2.json", 1), ("r8.json", 8)]:
            out = tmp_path / name
            proc = run_cli(
                "analyze", "--corpus", corpus_dir, "--forecaster", "seasonal_naive",
                "--param", "m=8", "--horizon", 16, "-n", 4, "--pairs", 2,
                "--seed", 1, "--jobs", jobs, "-o", out,
            )
            assert proc.returncode == 0, proc.stderr
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1] == outputs[2]


class TestPlotCommand:
    def test_renders_from_report(self, tmp_path):
        corpus_dir = write_corpus_dir(tmp_path, tiny_corpus())
        report_path = tmp_path / "report.json"
        run_cli(
            "analyze", "--corpus", corpus_dir, "--forecaster", "seasonal_naive",
            "--param", "m=8", "--horizon", 16, "-n", 3, "--pairs", 1,
            "-o", report_path,
        )
        out = tmp_path / "plot.svg"
        proc = run_cli(
            "plot", "--report", report_path, "--feature", "forecast_error", "-o", out
        )
        assert proc.returncode == 0, proc.stderr
        svg = out.read_text()
        assert svg.count('class="marker"') == 3
        assert "forecast_error vs morph step" in svg

    def test_unknown_feature_exits_2(self, tmp_path):
        corpus_dir = write_corpus_dir(tmp_path, tiny_corpus())
        report_path = tmp_path / "report.json"
        run_cli(
            "analyze", "--corpus", corpus_dir, "--forecaster", "seasonal_naive",
            "--param", "m=8", "--horizon", 16, "-n", 3, "--pairs", 1,
            "-o", report_path,
        )
        proc = run_cli("plot", "--report", report_path, "--feature", "nope")
        assert proc.returncode == 2

    def test_malformed_report_exits_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"schema": "wrong"}', encoding="utf-8")
        proc = run_cli("plot", "--report", bad, "--feature", "forecast_error")
        assert proc.returncode == 2


class TestSynthCommand:
    def test_byte_identical_runs(self, tmp_path):
        args = ["synth", "--kind", "sine", "--count", 5, "--length", 128, "--seed", 7]
        dir_a, dir_b = tmp_path / "a", tmp_path / "b"
        assert run_cli(*args, "-o", dir_a).returncode == 0
        assert run_cli(*args, "-o", dir_b).returncode == 0
        files_a = sorted(dir_a.glob("*.csv"))
        assert len(files_a) == 5
        for fa in files_a:
            assert fa.read_bytes() == (dir_b / fa.name).read_bytes()

    def test_count_zero_exits_2(self, tmp_path):
        proc = run_cli(
            "synth", "--kind", "sine", "--count", 0, "--length", 64, "--seed", 1,
            "-o", tmp_path / "x",
        )
        assert proc.returncode == 2

    def test_ar1_corpus_links_to_features(self, tmp_path):
        out_dir = tmp_path / "ar"
        proc = run_cli(
            "synth", "--kind", "ar1", "--count", 1, "--length", 2048, "--seed", 3,
            "--param", "phi=0.95", "-o", out_dir,
        )
        assert proc.returncode == 0, proc.stderr
        feat = run_cli("features", out_dir / "ar1_000.csv")
        doc = json.loads(feat.stdout.splitlines()[0])
        assert doc["whiten_timescale"] < 0.2
