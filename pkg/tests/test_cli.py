import io
import json

import numpy as np
import pytest

from rieszsep.cli import run
from rieszsep.errors import ConfigurationError
from rieszsep.geometry import roots_of_unity
from rieszsep.io import CSVFormatError, read_config_csv, write_config_csv


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


class TestCSV:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "hex.csv"
        c = roots_of_unity(6)
        write_config_csv(c, path)
        lines = path.read_text().splitlines()
        assert len(lines) == 6 and all(len(l.split(",")) == 2 for l in lines)
        back = read_config_csv(path, d=1)
        np.testing.assert_allclose(back.points, c.points, rtol=0, atol=1e-15)

    def test_arity(self, tmp_path):
        path = tmp_path / "p.csv"
        path.write_text("1,0,0\n0,1,0\n0,0,1\n")
        assert read_config_csv(path, d=2).n == 3
        with pytest.raises(CSVFormatError, match=":1:"):
            read_config_csv(path, d=3)

    def test_bad_number_reports_line(self, tmp_path):
        path = tmp_path / "p.csv"
        path.write_text("1,0\n0,abc\n")
        with pytest.raises(CSVFormatError, match=":2:"):
            read_config_csv(path)

    def test_off_sphere(self, tmp_path):
        path = tmp_path / "p.csv"
        path.write_text("1.01,0,0\n0,1,0\n")
        with pytest.raises(ConfigurationError):
            read_config_csv(path, d=2)

    def test_renormalize_small_drift(self, tmp_path, caplog):
        path = tmp_path / "p.csv"
        path.write_text("1.0000000001,0\n0,1\n")
        c = read_config_csv(path, d=1)
        assert abs(np.linalg.norm(c.points[0]) - 1) <= 1e-15
        assert "renormalizing" in caplog.text


class TestCommands:
    def test_gamma(self):
        code, out, _ = call("gamma", "--d", "2", "--s", "1")
        assert code == 0
        vals = dict(line.split(None, 1) for line in out.splitlines())
        assert float(vals["gamma_energy_form"]) == 1.0
        assert float(vals["gamma_boundary_form"]) == 1.0
        assert float(vals["abs_difference"]) <= 1e-12

    def test_potential(self):
        code, out, _ = call("potential", "--d", "2", "--s", "1", "--radius", "2")
        assert code == 0
        assert float(out.split()[1]) == pytest.approx(0.5, rel=1e-13)

    @pytest.mark.parametrize("method", ["elementary", "quadrature", "montecarlo"])
    def test_potential_methods(self, method):
        code, out, _ = call("potential", "--d", "2", "--s", "1", "--radius", "2",
                            "--method", method, "--samples", "20000", "--seed", "4")
        assert code == 0
        assert float(out.split()[1]) == pytest.approx(0.5, rel=2e-2)

    def test_optimize_then_separation(self, tmp_path):
        path = tmp_path / "tet.csv"
        code, out, _ = call("optimize", "--d", "2", "--s", "1", "--n", "4", "--out", str(path),
                            "--restarts", "2")
        assert code == 0
        assert float(out.splitlines()[0].split()[1]) == pytest.approx(12 / (8 / 3) ** 0.5, rel=1e-6)
        code, out, _ = call("separation", "--in", str(path), "--d", "2")
        assert code == 0
        rec = dict(line.split(None, 1) for line in out.splitlines())
        assert float(rec["min_distance"]) == pytest.approx((8 / 3) ** 0.5, rel=1e-6)

    def test_separation_arity_error(self, tmp_path):
        path = tmp_path / "tet.csv"
        path.write_text("1,0,0\n0,1,0\n")
        code, _, err = call("separation", "--in", str(path), "--d", "3")
        assert code == 3 and "expected 4 fields" in err

    def test_off_sphere_exit_code(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1.01,0,0\n0,1,0\n")
        assert call("separation", "--in", str(path), "--d", "2")[0] == 3

    def test_sweep_json(self, tmp_path):
        path = tmp_path / "r.json"
        code, out, _ = call("sweep", "--d", "2", "--s", "1", "--n-list", "4,6,8",
                            "--restarts", "2", "--out", str(path))
        assert code == 0
        doc = json.loads(path.read_text())
        assert json.loads(out) == doc
        assert set(doc) == {"d", "s", "gamma", "records", "constants", "empirical_A"}
        assert [r["n"] for r in doc["records"]] == [4, 6, 8]
        assert set(doc["records"][0]) == {"n", "energy", "min_distance", "scaled_separation",
                                          "lemma2_C", "lemma4_C", "lemma6_pass"}
        assert doc["empirical_A"] == pytest.approx(min(r["scaled_separation"] for r in doc["records"]))
        # floats carry 17 significant digits
        assert "7.3484692283495" in path.read_text()

    def test_verify(self):
        code, out, _ = call("verify", "--d", "2", "--s", "1", "--n", "4")
        assert code == 0
        assert out.count("PASS") >= 8 and "FAIL" not in out

    def test_verify_failure_exit(self):
        code, out, _ = call("verify", "--d", "2", "--s", "1", "--n", "30", "--max-iters", "3",
                            "--restarts", "1")
        assert code == 1 and "FAIL converged" in out

    @pytest.mark.parametrize("argv", [
        [],
        ["gamma", "--d", "2"],
        ["gamma", "--d", "two", "--s", "1"],
        ["potential", "--d", "2", "--s", "nan", "--radius", "2"],
        ["sweep", "--d", "2", "--s", "1", "--n-list", "a,b"],
        ["potential", "--d", "2", "--s", "1", "--radius", "2", "--method", "magic"],
    ])
    def test_usage_errors(self, argv):
        assert call(*argv)[0] == 2

    def test_domain_errors(self):
        code, _, err = call("gamma", "--d", "2", "--s", "3")
        assert code == 3 and "0 < s < d" in err
        assert call("potential", "--d", "2", "--s", "3", "--radius", "1")[0] == 3
