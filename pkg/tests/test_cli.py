"""CLI harness tests: exit codes, report schemas, determinism, mutations."""

import csv
import json
import re

import pytest

from cliffem import cli, em_fields as em
from cliffem.verify import ConfigError, SuiteConfig, parse_config_file


def run_cli(args):
    return cli.main(args)


class TestVerifyCommand:
    def test_default_suites_pass(self, tmp_path):
        out = tmp_path / "report.json"
        code = run_cli(["verify", "--json", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["passed"] is True
        assert report["schema"] == "cliffem-verify-1"

    def test_report_schema_keys(self, tmp_path):
        out = tmp_path / "report.json"
        run_cli(["verify", "--json", str(out)])
        report = json.loads(out.read_text())
        for row in report["results"]:
            assert set(row) == {"suite", "property", "paper_ref", "error", "tol", "pass"}

    def test_deterministic_apart_from_timestamp(self, tmp_path):
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        run_cli(["verify", "--seed", "7", "--json", str(out1)])
        run_cli(["verify", "--seed", "7", "--json", str(out2)])
        strip = lambda text: re.sub(r'"timestamp": "[^"]*"', '"timestamp": ""', text)
        assert strip(out1.read_text()) == strip(out2.read_text())

    def test_mass_sign_mutation_fails_equivalence(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setattr(em, "MASS_TERM_SIGN", -1.0)
        out = tmp_path / "report.json"
        code = run_cli(["verify", "--json", str(out),
                        "--config", str(_write_config(tmp_path, "suites = equivalence"))])
        assert code == 1
        report = json.loads(out.read_text())
        failing = [r for r in report["results"] if not r["pass"]]
        assert failing and failing[0]["suite"] == "equivalence"
        assert "equivalence" in capsys.readouterr().err

    def test_malformed_config_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.cfg"
        bad.write_text("this is not a key value line\n")
        code = run_cli(["verify", "--config", str(bad)])
        assert code == 2
        assert "config error" in capsys.readouterr().err

    def test_missing_config_exits_2(self, tmp_path):
        assert run_cli(["verify", "--config", str(tmp_path / "nope.cfg")]) == 2

    def test_output_dir_env_honored(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "outputs"))
        code = run_cli(["verify", "--json", "report.json",
                        "--config", str(_write_config(tmp_path, "suites = structure"))])
        assert code == 0
        assert (tmp_path / "outputs" / "report.json").exists()


def _write_config(tmp_path, *lines):
    path = tmp_path / "suite.cfg"
    path.write_text("\n".join(lines) + "\n")
    return path


class TestConfigParsing:
    def test_full_file(self, tmp_path):
        path = _write_config(
            tmp_path,
            "# format: flat key = value",
            "seed = 9",
            "c = 2.0",
            "m_gamma = 0.3",
            "ladder = 0.08, 0.04, 0.02",
            "order = 4",
            "suites = algebra, structure",
            "tol.algebra = 1e-11",
        )
        cfg = parse_config_file(str(path))
        assert cfg.seed == 9 and cfg.c == 2.0 and cfg.m_gamma == 0.3
        assert cfg.ladder == (0.08, 0.04, 0.02) and cfg.order == 4
        assert cfg.suites == ("algebra", "structure")
        assert cfg.tol("algebra") == 1e-11
        assert cfg.tol("structure") == 1e-12  # default preserved

    def test_unknown_key_rejected(self, tmp_path):
        path = _write_config(tmp_path, "multiverse = yes")
        with pytest.raises(ConfigError, match="unknown config key"):
            parse_config_file(str(path))

    def test_unknown_suite_rejected(self, tmp_path):
        path = _write_config(tmp_path, "suites = algebra, astrology")
        with pytest.raises(ConfigError, match="unknown suites"):
            parse_config_file(str(path))

    def test_bad_tolerance_rejected(self, tmp_path):
        path = _write_config(tmp_path, "tol.algebra = -1")
        with pytest.raises(ConfigError):
            parse_config_file(str(path))

    def test_defaults(self):
        cfg = SuiteConfig()
        assert cfg.tol("equivalence") == 1e-10
        assert cfg.tol("covariance") == 1e-9


class TestConvergenceCommand:
    def test_default_ladder_passes(self, tmp_path):
        out = tmp_path / "conv.csv"
        assert run_cli(["convergence", "--csv", str(out)]) == 0
        rows = list(csv.DictReader(out.read_text().splitlines()))
        assert {r["config"] for r in rows} == {"yukawa", "monopole", "proca_wave"}
        for row in rows:
            assert float(row["fitted_order"]) >= 1.7

    def test_fourth_order(self, tmp_path):
        out = tmp_path / "conv4.csv"
        assert run_cli(["convergence", "--order", "4",
                        "--ladder", "0.08,0.04,0.02", "--csv", str(out)]) == 0
        rows = list(csv.DictReader(out.read_text().splitlines()))
        assert all(float(r["fitted_order"]) >= 3.7 for r in rows)

    def test_empty_ladder_exits_2(self, capsys):
        assert run_cli(["convergence", "--ladder", ""]) == 2
        assert "ladder" in capsys.readouterr().err

    def test_short_ladder_exits_2(self):
        assert run_cli(["convergence", "--ladder", "0.04,0.02"]) == 2

    def test_row_format(self, tmp_path):
        out = tmp_path / "conv.csv"
        run_cli(["convergence", "--csv", str(out)])
        header = out.read_text().splitlines()[0]
        assert header == "config,equation,spacing,residual_norm,fitted_order"


class TestBenchCommand:
    def test_produces_records_and_ratios(self, tmp_path):
        out = tmp_path / "bench.csv"
        assert run_cli(["bench", "--reps", "400", "--csv", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0].split(",") == ["formalism", "operation", "reps", "batches",
                                       "ns_per_op_median", "ns_per_op_iqr",
                                       "workload_checksum"]
        body = [line.split(",") for line in lines[1:]]
        formalisms = {row[0] for row in body}
        assert {"cl3", "cl13", "ratio_cl13_over_cl3"} <= formalisms

    def test_workload_checksums_deterministic(self, tmp_path):
        out1, out2 = tmp_path / "b1.csv", tmp_path / "b2.csv"
        run_cli(["bench", "--reps", "400", "--seed", "5", "--csv", str(out1)])
        run_cli(["bench", "--reps", "400", "--seed", "5", "--csv", str(out2)])

        def checksums(path):
            rows = list(csv.DictReader(path.read_text().splitlines()))
            return [r["workload_checksum"] for r in rows if r["workload_checksum"]]

        assert checksums(out1) == checksums(out2)

    def test_median_batches_minimum(self, tmp_path):
        out = tmp_path / "bench.csv"
        run_cli(["bench", "--reps", "400", "--csv", str(out)])
        rows = list(csv.DictReader(out.read_text().splitlines()))
        for row in rows:
            if row["batches"]:
                assert int(row["batches"]) >= 5


class TestReportCommand:
    def test_pretty_print(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        run_cli(["verify", "--json", str(out),
                 "--config", str(_write_config(tmp_path, "suites = structure"))])
        capsys.readouterr()
        assert run_cli(["report", "--from", str(out)]) == 0
        text = capsys.readouterr().out
        assert "PASS" in text and "properties passed" in text

    def test_missing_file_exits_2(self, capsys):
        assert run_cli(["report", "--from", "/nonexistent.json"]) == 2

    def test_usage_error_exits_2(self, capsys):
        assert run_cli(["report"]) == 2
