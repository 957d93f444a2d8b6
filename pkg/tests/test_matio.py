import json

import numpy as np
import pytest

from colsel import GeneratorSpec, generate, run_selection
from colsel.matio import (
    dumps_json,
    load_matrix,
    load_report,
    read_csv_matrix,
    read_matrix_market,
    report_from_dict,
    report_to_csv,
    report_to_dict,
    report_to_json,
    write_csv_matrix,
    write_matrix_market,
)


@pytest.fixture
def matrix():
    return generate(GeneratorSpec("random_sphere", 7, 5, seed=31))


class TestMatrixFormats:
    def test_csv_roundtrip_exact(self, tmp_path, matrix):
        path = str(tmp_path / "m.csv")
        write_csv_matrix(path, matrix)
        back = read_csv_matrix(path)
        np.testing.assert_array_equal(back, matrix)

    def test_matrix_market_roundtrip_exact(self, tmp_path, matrix):
        path = str(tmp_path / "m.mtx")
        write_matrix_market(path, matrix)
        back = read_matrix_market(path)
        np.testing.assert_array_equal(back, matrix)

    def test_matrix_market_against_scipy(self, tmp_path, matrix):
        scipy_io = pytest.importorskip("scipy.io")
        path = str(tmp_path / "m.mtx")
        write_matrix_market(path, matrix)
        ref = np.asarray(scipy_io.mmread(path))
        np.testing.assert_array_equal(ref, matrix)
        theirs = str(tmp_path / "scipy.mtx")
        scipy_io.mmwrite(theirs, matrix)
        np.testing.assert_allclose(read_matrix_market(theirs), matrix, atol=0, rtol=0)

    def test_load_matrix_sniffs_format(self, tmp_path, matrix):
        csv_path = str(tmp_path / "m.csv")
        mm_path = str(tmp_path / "m.mtx")
        write_csv_matrix(csv_path, matrix)
        write_matrix_market(mm_path, matrix)
        np.testing.assert_array_equal(load_matrix(csv_path), matrix)
        np.testing.assert_array_equal(load_matrix(mm_path), matrix)

    def test_matrix_market_rejects_coordinate_format(self, tmp_path):
        path = tmp_path / "sparse.mtx"
        path.write_text("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 2.0\n")
        with pytest.raises(ValueError):
            read_matrix_market(str(path))

    def test_matrix_market_entry_count_checked(self, tmp_path):
        path = tmp_path / "short.mtx"
        path.write_text("%%MatrixMarket matrix array real general\n2 2\n1.0\n2.0\n3.0\n")
        with pytest.raises(ValueError):
            read_matrix_market(str(path))

    def test_ragged_csv_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1.0,2.0\n3.0\n")
        with pytest.raises(ValueError):
            read_csv_matrix(str(path))


class TestJsonEmitter:
    def test_seventeen_significant_digits(self):
        out = dumps_json({"x": 0.1})
        assert "0.10000000000000001" in out

    def test_nonfinite_markers(self):
        out = dumps_json({"a": float("inf"), "b": float("-inf"), "c": float("nan")})
        data = json.loads(out)
        assert data == {"a": "inf", "b": "-inf", "c": "nan"}

    def test_valid_json(self):
        payload = {"list": [1, 2.5, "x", True, None], "nested": {"k": [0.25]}}
        assert json.loads(dumps_json(payload)) == payload

    def test_deterministic(self):
        payload = {"b": [1.0, 2.0], "a": {"c": 3.0}}
        assert dumps_json(payload) == dumps_json(payload)


class TestReportSerialization:
    def test_roundtrip_preserves_report(self, tmp_path):
        x = generate(GeneratorSpec("random_sphere", 20, 60, seed=12))
        report = run_selection(x, 0.8)
        path = tmp_path / "report.json"
        path.write_text(report_to_json(report))
        back = load_report(str(path))
        assert back == report

    def test_schema_fields_present(self):
        report = run_selection(np.eye(16), 0.5)
        data = report_to_dict(report)
        assert set(data) == {
            "params",
            "selected",
            "trajectory",
            "scores",
            "envelope_checks",
            "interlacing_checks",
            "final_extremes",
            "certified",
            "versions",
        }
        assert data["versions"]["report_schema"] == 1

    def test_invalid_structure_rejected(self):
        with pytest.raises(ValueError):
            report_from_dict({"params": {}})

    def test_csv_view_contains_envelope_rows(self):
        report = run_selection(np.eye(16), 0.5)
        text = report_to_csv(report)
        lines = [l for l in text.splitlines() if l and not l.startswith("#")]
        assert lines[0] == "r,k,value,lower,upper,ok"
        assert len(lines) - 1 == len(report.envelope_checks)

    def test_non_json_report_rejected(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("r,k,value\n1,1,1.0\n")
        with pytest.raises(ValueError):
            load_report(str(path))
