"""
文件存储测试
"""
import json

import numpy as np
import pytest

from src.models.metric_config import BaseDistance, MetricConfig
from src.models.multi_bernoulli import MultiBernoulli
from src.models.reports import CardinalityTable, RegionGrid
from src.storage.file_storage import FileStorage, format_number
from src.utils.exceptions import InputFormatError


def write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


class TestReaders:

    def test_read_target_set(self, tmp_path):
        path = write_json(tmp_path / "x.json", [[0.0, 1.0], [2.0, 3.0]])
        target_set = FileStorage.read_target_set(path)
        assert len(target_set) == 2
        assert target_set.dim == 2

    def test_read_empty_target_set(self, tmp_path):
        assert len(FileStorage.read_target_set(write_json(tmp_path / "x.json", []))) == 0

    @pytest.mark.parametrize("data", [{"points": []}, [1.0, 2.0], [[0.0], [1.0, 2.0]], [["a"]]])
    def test_malformed_target_set(self, tmp_path, data):
        with pytest.raises(InputFormatError):
            FileStorage.read_target_set(write_json(tmp_path / "x.json", data))

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "x.json"
        path.write_text("[[0.0]", encoding="utf-8")
        with pytest.raises(InputFormatError):
            FileStorage.read_json(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputFormatError):
            FileStorage.read_json(tmp_path / "missing.json")

    def test_non_utf8_file(self, tmp_path):
        path = tmp_path / "x.json"
        path.write_bytes(b"\xff\xfe[[0]]")
        with pytest.raises(InputFormatError):
            FileStorage.read_target_set(path)

    def test_directory_instead_of_file(self, tmp_path):
        with pytest.raises(InputFormatError):
            FileStorage.read_json(tmp_path)

    def test_read_multi_bernoulli(self, tmp_path):
        mb = MultiBernoulli.on_line([0.4, 0.9])
        path = write_json(tmp_path / "mb.json", mb.to_dict())
        assert FileStorage.read_multi_bernoulli(path) == mb

    @pytest.mark.parametrize("data", [
        {"components": [{"r": 1.5, "x": [0.0]}]},
        {"components": [{"x": [0.0]}]},
        {"targets": []},
    ])
    def test_malformed_multi_bernoulli(self, tmp_path, data):
        with pytest.raises(InputFormatError):
            FileStorage.read_multi_bernoulli(write_json(tmp_path / "mb.json", data))

    def test_read_metric_config(self, tmp_path):
        path = write_json(tmp_path / "cfg.json", {"c": 5, "base_distance": "manhattan"})
        cfg = FileStorage.read_metric_config(path)
        assert cfg.c == 5.0
        assert cfg.p == 2.0
        assert cfg.base_distance is BaseDistance.MANHATTAN

    def test_metric_config_falls_back_to_base(self, tmp_path):
        path = write_json(tmp_path / "cfg.json", {"base_distance": "chebyshev"})
        cfg = FileStorage.read_metric_config(path, MetricConfig(c=4.0, alpha=1.0))
        assert cfg == MetricConfig(c=4.0, alpha=1.0, base_distance=BaseDistance.CHEBYSHEV)

    def test_metric_config_unknown_key(self, tmp_path):
        path = write_json(tmp_path / "cfg.json", {"cutoff": 2.0})
        with pytest.raises(InputFormatError):
            FileStorage.read_metric_config(path)


class TestWriters:

    def test_regions_csv(self):
        grid = RegionGrid("gospa", 0.5, np.array([0.0, 0.5, 1.0]), np.array([[0, 0, 2], [0, 0, 2], [1, 1, 3]]))
        lines = FileStorage.regions_to_csv([grid]).splitlines()
        assert lines[0] == "estimator,r1,r2,code"
        assert lines[1] == "gospa,0,0,0"
        assert lines[3] == "gospa,0,1,2"
        assert lines[-1] == "gospa,1,1,3"
        assert len(lines) == 10

    def test_cardinality_csv(self):
        table = CardinalityTable(r=0.8, rows=[(1, 1, 1, 1), (8, 8, 7, 8)])
        assert FileStorage.cardinality_to_csv(table) == (
            "N,n_hat_gospa,n_hat_uospa,n_hat_ospa\n1,1,1,1\n8,8,7,8\n"
        )

    def test_format_number(self):
        assert format_number(0.1 + 0.2) == "0.3"
        assert format_number(1e-12) == "1e-12"

    def test_json_is_sorted(self):
        assert FileStorage.to_json({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'

    def test_write_text_uses_lf(self, tmp_path):
        path = tmp_path / "out" / "regions.csv"
        FileStorage.write_text(path, "a,b\n1,2\n")
        assert path.read_bytes() == b"a,b\n1,2\n"
        assert not path.with_suffix(".csv.tmp").exists()

    def test_gnuplot_script(self, tmp_path):
        script = FileStorage.gnuplot_regions_script(tmp_path / "regions.csv", ["gospa", "ospa"])
        assert "set output 'regions_gospa.png'" in script
        assert "strcol(1) eq 'ospa'" in script
