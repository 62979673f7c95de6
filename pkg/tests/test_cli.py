"""
命令行界面测试
"""
import json

import pytest
from loguru import logger

from src.models.multi_bernoulli import MultiBernoulli
from src.ui.cli import EXIT_ERROR, EXIT_OK, EXIT_VALIDATION_FAILED, main


@pytest.fixture(autouse=True)
def reset_logger():
    """main 会把日志接到被捕获的 stderr 上, 测试结束后移除"""
    yield
    logger.remove()


@pytest.fixture
def mb_file(tmp_path):
    path = tmp_path / "mb.json"
    path.write_text(json.dumps(MultiBernoulli.on_line([0.4, 0.9]).to_dict()), encoding="utf-8")
    return path


def write_set(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


class TestMetric:

    def test_empty_sets(self, tmp_path, capsys):
        x = write_set(tmp_path, "x.json", [])
        y = write_set(tmp_path, "y.json", [])
        assert main(["metric", x, y]) == EXIT_OK
        assert capsys.readouterr().out == "0\n"

    def test_ospa_with_empty_estimate(self, tmp_path, capsys):
        x = write_set(tmp_path, "x.json", [[0.0]])
        y = write_set(tmp_path, "y.json", [])
        assert main(["metric", x, y, "--metric", "ospa", "--c", "1"]) == EXIT_OK
        assert capsys.readouterr().out == "1\n"

    def test_decompose(self, tmp_path, capsys):
        x = write_set(tmp_path, "x.json", [[0.3]])
        y = write_set(tmp_path, "y.json", [[0.4]])
        assert main(["metric", x, y, "--decompose"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["total"] == pytest.approx(0.1)
        assert data["localisation_cost"] == pytest.approx(0.01)
        assert data["missed_cost"] == 0.0
        assert data["false_cost"] == 0.0

    def test_malformed_input(self, tmp_path, capsys):
        x = write_set(tmp_path, "x.json", {"points": []})
        y = write_set(tmp_path, "y.json", [])
        assert main(["metric", x, y]) == EXIT_ERROR
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "目标集合" in captured.err

    def test_non_utf8_input(self, tmp_path, capsys):
        path = tmp_path / "x.json"
        path.write_bytes(b"\xff\xfe[[0]]")
        assert main(["metric", str(path), str(path)]) == EXIT_ERROR
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "UTF-8" in captured.err

    def test_directory_input(self, tmp_path):
        y = write_set(tmp_path, "y.json", [])
        assert main(["metric", str(tmp_path), y]) == EXIT_ERROR


class TestMseAndEstimate:

    def test_mse(self, mb_file, capsys):
        assert main(["mse", str(mb_file), "--metric", "ospa", "--e-hat", "0,1"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["value"] == pytest.approx(0.28)
        assert data["metric_kind"] == "ospa"

    def test_mse_general_alpha(self, mb_file, capsys):
        assert main(["mse", str(mb_file), "--alpha", "1", "--e-hat", "0,1"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["metric_kind"] == "gospa_alpha"

    def test_mse_bad_vector(self, mb_file):
        assert main(["mse", str(mb_file), "--e-hat", "1,x"]) == EXIT_ERROR

    def test_order_other_than_two_is_rejected(self, mb_file, capsys):
        assert main(["mse", str(mb_file), "--metric", "ospa", "--e-hat", "1,1", "--p", "3"]) == EXIT_ERROR
        assert main(["estimate", str(mb_file), "--estimator", "ospa", "--p", "3"]) == EXIT_ERROR
        assert capsys.readouterr().out == ""

    def test_order_from_config_is_rejected(self, mb_file, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"metric": {"p": 3.0}}), encoding="utf-8")
        args = ["mse", str(mb_file), "--e-hat", "1,1", "--config", str(config)]
        assert main(args) == EXIT_ERROR

    def test_metric_config_file(self, mb_file, tmp_path, capsys):
        metric_file = write_set(tmp_path, "metric.json", {"c": 3.0})
        base = ["mse", str(mb_file), "--metric", "ospa", "--e-hat", "0,1", "--metric-config", metric_file]
        assert main(base) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["value"] == pytest.approx(0.28 * 9)
        assert main(base + ["--c", "1"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["value"] == pytest.approx(0.28)

    def test_separation_uses_base_distance(self, tmp_path):
        mb = write_set(tmp_path, "mb.json", {"components": [
            {"r": 0.4, "x": [0.0, 0.0]},
            {"r": 0.4, "x": [0.8, 0.8]},
        ]})
        args = ["mse", mb, "--metric", "ospa", "--e-hat", "1,0"]
        assert main(args) == EXIT_OK
        assert main(args + ["--base-distance", "chebyshev"]) == EXIT_ERROR
        assert main(["estimate", mb, "--estimator", "jom", "--base-distance", "chebyshev"]) == EXIT_ERROR

    def test_estimate(self, mb_file, capsys):
        assert main(["estimate", str(mb_file), "--estimator", "ospa"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["e_hat"] == [0, 1]
        assert data["estimator"] == "ospa"


class TestSweeps:

    def test_sweep_regions_stdout(self, capsys):
        assert main(["sweep-regions", "--estimator", "gospa,ospa", "--grid-step", "0.5"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "estimator,r1,r2,code"
        assert len(lines) == 1 + 2 * 9
        assert "gospa,1,1,3" in lines

    def test_sweep_regions_files(self, tmp_path):
        out = tmp_path / "regions.csv"
        script = tmp_path / "regions.gp"
        args = ["sweep-regions", "--estimator", "jom", "--grid-step", "0.25", "--out", str(out), "--gnuplot", str(script)]
        assert main(args) == EXIT_OK
        first = out.read_bytes()
        assert main(args) == EXIT_OK
        assert out.read_bytes() == first
        assert "regions_jom.png" in script.read_text(encoding="utf-8")

    def test_gnuplot_requires_out(self, tmp_path):
        assert main(["sweep-regions", "--grid-step", "0.5", "--gnuplot", str(tmp_path / "x.gp")]) == EXIT_ERROR

    def test_separation_violation(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"sweep": {"locations": [[0.0], [0.5]]}}), encoding="utf-8")
        assert main(["sweep-regions", "--grid-step", "0.5", "--config", str(config)]) == EXIT_ERROR

    def test_sweep_cardinality_rejects_other_order(self):
        assert main(["sweep-cardinality", "--r", "0.8", "--p", "3"]) == EXIT_ERROR

    def test_sweep_regions_separation_uses_base_distance(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"sweep": {"locations": [[0.0, 0.0], [0.8, 0.8]]}}), encoding="utf-8")
        args = ["sweep-regions", "--estimator", "mam", "--grid-step", "0.5", "--config", str(config)]
        assert main(args) == EXIT_OK
        assert main(args + ["--base-distance", "chebyshev"]) == EXIT_ERROR

    def test_sweep_cardinality(self, capsys):
        assert main(["sweep-cardinality", "--r", "0.8", "--n-max", "14"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "N,n_hat_gospa,n_hat_uospa,n_hat_ospa"
        assert lines[8] == "8,8,7,8"
        assert lines[14] == "14,14,12,14"


class TestValidate:

    def test_passes(self, capsys):
        code = main(["validate", "--seed", "1", "--instances", "4", "--max-components", "3"])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["passed"] is True

    def test_zero_tolerance_fails(self, capsys):
        code = main(["validate", "--instances", "2", "--max-components", "2", "--tolerance", "0"])
        assert code == EXIT_VALIDATION_FAILED
        assert json.loads(capsys.readouterr().out)["passed"] is False

    def test_zero_instances_rejected(self):
        assert main(["validate", "--instances", "0"]) == EXIT_ERROR

    def test_report_is_byte_stable(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        args = ["validate", "--seed", "4", "--instances", "3", "--max-components", "3"]
        assert main(args + ["--out", str(first)]) == EXIT_OK
        assert main(args + ["--out", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()


class TestUsage:

    def test_unknown_command(self):
        assert main(["plot"]) == EXIT_ERROR

    def test_missing_required_flag(self):
        assert main(["sweep-cardinality"]) == EXIT_ERROR

    def test_missing_config(self, tmp_path):
        assert main(["sweep-cardinality", "--r", "0.5", "--config", str(tmp_path / "none.json")]) == EXIT_ERROR
