import csv
import io
import json
import math

import numpy as np
import pytest

from arma_geodesy import (
    BERGMAN,
    DIRICHLET,
    ArmaModel,
    MethodSchemeMismatch,
    ParseError,
    UnstablePoint,
    distance_matrix,
    load_model,
    save_model,
    weighted_distance_series,
    xi,
)
from arma_geodesy.cli import main
from arma_geodesy.io import WORKERS_ENV, default_workers, model_from_dict, model_to_dict
from helpers import random_model


def write(path, payload):
    path.write_text(json.dumps(payload))
    return path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestModelFile:
    def test_ar1(self, tmp_path):
        m = load_model(write(tmp_path / "ar1.json", {"poles": [[0.5, 0.0]], "zeros": []}))
        assert m == ArmaModel(1.0, (0.5,))
        assert m.label == "ar1"

    def test_unstable_names_file(self, tmp_path):
        path = write(tmp_path / "bad.json", {"poles": [[1.2, 0.0]], "zeros": []})
        with pytest.raises(UnstablePoint, match="bad.json"):
            load_model(path)

    def test_complex_zero(self, tmp_path):
        m = load_model(write(tmp_path / "ma.json", {"gain": 2.0, "poles": [], "zeros": [[0.3, 0.1]]}))
        assert (m.p, m.q, m.gain) == (0, 1, 2.0)
        assert m.zeros == (0.3 + 0.1j,)

    def test_explicit_label(self, tmp_path):
        m = load_model(write(tmp_path / "x.json", {"poles": [], "label": "flat"}))
        assert m.label == "flat"

    @pytest.mark.parametrize(
        "payload",
        [
            [1, 2],
            {"poles": [[0.5]]},
            {"poles": "0.5"},
            {"poles": [["a", 0]]},
            {"gain": "2"},
            {"poles": [], "order": 2},
        ],
    )
    def test_parse_errors(self, tmp_path, payload):
        with pytest.raises(ParseError):
            load_model(write(tmp_path / "m.json", payload))

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text("{not json")
        with pytest.raises(ParseError):
            load_model(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_model(tmp_path / "nope.json")

    def test_roundtrip(self, tmp_path, rng):
        for k in range(20):
            m = random_model(rng)
            path = tmp_path / f"m{k}.json"
            save_model(m, path)
            back = load_model(path)
            assert back == m
            assert model_to_dict(model_from_dict(model_to_dict(m))) == model_to_dict(m)


class TestDistanceMatrix:
    def test_same_model(self):
        m = ArmaModel(1.0, (0.5,), label="m")
        rep = distance_matrix([m, m], DIRICHLET, "closed")
        np.testing.assert_array_equal(rep.values, np.zeros((2, 2)))

    def test_ar1_pair_closed_and_series(self):
        models = [ArmaModel(1.0, (0.5,), label="a"), ArmaModel(1.0, (0.3,), label="b")]
        closed = distance_matrix(models, DIRICHLET, "closed")
        series = distance_matrix(models, DIRICHLET, "series", tol=1e-10)
        assert closed.values[0, 1] == pytest.approx(0.2386522, abs=5e-8)
        assert abs(series.values[0, 1] - closed.values[0, 1]) <= 1e-8
        assert closed.labels == ["a", "b"]

    def test_mismatch(self):
        models = [ArmaModel(1.0, (0.5,)), ArmaModel(1.0, (0.3,))]
        with pytest.raises(MethodSchemeMismatch):
            distance_matrix(models, BERGMAN, "closed")

    def test_needs_two(self):
        with pytest.raises(ValueError):
            distance_matrix([ArmaModel()], DIRICHLET, "closed")

    def test_workers_do_not_change_output(self, rng):
        models = [random_model(rng) for _ in range(8)]
        one = distance_matrix(models, DIRICHLET, "series", workers=1)
        many = distance_matrix(models, DIRICHLET, "series", workers=4)
        np.testing.assert_array_equal(one.values, many.values)

    def test_permutation_invariance(self, rng):
        models = [random_model(rng) for _ in range(6)]
        perm = rng.permutation(6)
        base = distance_matrix(models, DIRICHLET, "closed").values
        shuffled = distance_matrix([models[i] for i in perm], DIRICHLET, "closed").values
        np.testing.assert_allclose(shuffled, base[np.ix_(perm, perm)], rtol=1e-13, atol=1e-15)

    def test_closed_vs_series_random(self, rng):
        models = [random_model(rng) for _ in range(10)]
        closed = distance_matrix(models, DIRICHLET, "closed").values
        series = distance_matrix(models, DIRICHLET, "series", tol=1e-10).values
        assert np.max(np.abs(closed - series)) <= 1e-8
        np.testing.assert_array_equal(closed, closed.T)
        assert np.all(np.diag(closed) == 0)

    def test_csv_precision(self):
        models = [ArmaModel(1.0, (0.5,), label="a"), ArmaModel(1.0, (0.3,), label="b")]
        rep = distance_matrix(models, DIRICHLET, "closed")
        rows = list(csv.reader(io.StringIO(rep.to_csv())))
        assert rows[0] == ["label", "a", "b"]
        assert float(rows[1][2]) == rep.values[0, 1]

    def test_workers_env(self, monkeypatch):
        monkeypatch.setenv(WORKERS_ENV, "3")
        assert default_workers() == 3
        monkeypatch.setenv(WORKERS_ENV, "x")
        with pytest.raises(ParseError):
            default_workers()


@pytest.fixture
def golden(tmp_path):
    a = write(tmp_path / "a.json", {"poles": [[0.5, 0.0]], "zeros": []})
    b = write(tmp_path / "b.json", {"poles": [[0.3, 0.0]], "zeros": []})
    return a, b


class TestCli:
    def test_validate(self, capsys, golden):
        code, out, _ = run(capsys, "validate", str(golden[0]))
        assert code == 0
        assert json.loads(out)["p"] == 1

    def test_validate_error_code(self, capsys, tmp_path):
        bad = write(tmp_path / "bad.json", {"poles": [[1.2, 0.0]]})
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 2
        assert "bad.json" in err

    def test_parse_error_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("[")
        assert run(capsys, "validate", str(bad))[0] == 3

    def test_cepstrum(self, capsys, golden):
        code, out, _ = run(capsys, "cepstrum", str(golden[0]), "--max-s", "3")
        data = json.loads(out)
        assert code == 0
        assert data["convention"] == {"sign_pole": 1, "sign_zero": -1}
        assert data["cepstrum"][3]["value"][0] == pytest.approx(0.125 / 3)

    def test_norm(self, capsys, golden):
        _, out, _ = run(capsys, "norm", str(golden[0]), "--weight", "dirichlet", "--tol", "1e-12")
        assert json.loads(out)["value_squared"] == pytest.approx(-math.log(0.75), abs=1e-12)
        _, out, _ = run(capsys, "norm", str(golden[0]), "--method", "closed")
        assert json.loads(out)["value"] == pytest.approx(math.sqrt(-math.log(0.75)), rel=1e-14)

    def test_norm_mismatch(self, capsys, golden):
        code, _, err = run(capsys, "norm", str(golden[0]), "--weight", "hardy", "--method", "closed")
        assert code == 2
        assert "Dirichlet" in err

    def test_distance(self, capsys, golden):
        _, out, _ = run(capsys, "distance", *map(str, golden), "--weight", "sobolev:1")
        a, b = ArmaModel(1.0, (0.5,)), ArmaModel(1.0, (0.3,))
        from arma_geodesy import WeightScheme

        assert json.loads(out)["value"] == weighted_distance_series(a, b, WeightScheme("sobolev", 1)).value

    def test_decompose(self, capsys, golden):
        code, out, _ = run(capsys, "decompose", *map(str, golden))
        data = json.loads(out)
        assert code == 0
        assert set(data) >= {"ar_ar", "ma_ma", "ar_ma_cross", "residual", "total_squared",
                             "relative_order_delta"}
        assert data["total_squared"] == pytest.approx(xi(0.5, 0.3), rel=1e-12)

    def test_metric(self, capsys, golden):
        _, out, _ = run(capsys, "metric", str(golden[0]), "--check-fd", "--step", "1e-4")
        data = json.loads(out)
        assert data["metric"][0][0][0] == pytest.approx(1 / 0.75**2)
        assert data["metric_fd_max_rel_error"] < 1e-5

    def test_metric_singular_warning(self, capsys, tmp_path):
        m = write(tmp_path / "s.json", {"poles": [[0.4, 0.0]], "zeros": [[0.4, 0.0]]})
        _, out, _ = run(capsys, "metric", str(m))
        assert "singular" in json.loads(out)["warnings"][0]

    def test_metric_other_weight_uses_fd(self, capsys, golden):
        _, out, _ = run(capsys, "metric", str(golden[0]), "--weight", "hardy")
        data = json.loads(out)
        assert "metric" not in data
        assert data["metric_fd"][0][0][0] == pytest.approx(4 / 3, rel=1e-5)

    def test_matrix_to_csv(self, capsys, golden, tmp_path):
        out_path = tmp_path / "out.csv"
        code, _, _ = run(capsys, "matrix", str(golden[0].parent), "--out", str(out_path))
        rows = list(csv.reader(out_path.open()))
        assert code == 0
        assert float(rows[1][2]) == pytest.approx(0.2386522, abs=5e-8)

    def test_matrix_stdout_formats(self, capsys, golden):
        _, out, _ = run(capsys, "--format", "csv", "matrix", str(golden[0].parent))
        assert out.startswith("label,a,b")
        _, out, _ = run(capsys, "matrix", str(golden[0].parent), "--format", "pretty")
        assert "values[0]" in out

    def test_roots(self, capsys):
        code, out, _ = run(capsys, "roots", "--ar", "1,-0.8,0.15", "--ma", "1,-0.2")
        data = json.loads(out)
        assert code == 0
        assert sorted(p[0] for p in data["poles"]) == pytest.approx([0.3, 0.5], abs=1e-12)
        assert data["zeros"] == [[0.2, 0.0]]
        # Output is a loadable model file.
        assert model_from_dict(data).p == 2

    def test_roots_outside(self, capsys):
        assert run(capsys, "roots", "--ar", "1,-1.1")[0] == 2

    def test_roots_needs_input(self, capsys):
        assert run(capsys, "roots")[0] == 3

    def test_csv_format(self, capsys, golden):
        _, out, _ = run(capsys, "--format", "csv", "decompose", *map(str, golden))
        assert out.splitlines()[0] == "key,value"
        assert any(line.startswith("total_squared,") for line in out.splitlines())
