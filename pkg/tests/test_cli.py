import json
import subprocess
import sys

import numpy as np
import pytest

from rigidangles.cli import dumps, main, parse_angle
from rigidangles.core import ScalarField
from rigidangles.problemfile import ProblemFile, dump, fixture_path
from rigidangles.sampling import random_gram_matrix, random_vector


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def fx(name):
    return fixture_path(name)


def kv(out):
    return dict(line.split("=", 1) for line in out.strip().splitlines())


class TestAngle:
    def test_quarter_turn(self, capsys):
        code, out, _ = run(capsys, "angle", fx("skewed_plane"), "--form", "G2", "--x", "e1", "--y", "ones")
        assert code == 0
        assert kv(out)["theta"] == "0.7853981634"

    def test_right_angle(self, capsys):
        code, out, _ = run(capsys, "angle", fx("standard_r2"), "--form", "I", "--x", "e1", "--y", "e2", "--json")
        assert code == 0
        assert json.loads(out)["theta"] == pytest.approx(np.pi / 2, abs=1e-15)

    def test_zero_vector(self, capsys):
        code, out, err = run(capsys, "angle", fx("standard_r2"), "--form", "I", "--x", "zero", "--y", "e1")
        assert code == 3 and out == ""
        assert "ZeroVectorAngle" in err

    def test_all_kinds_complex(self, capsys):
        code, out, _ = run(capsys, "angle", fx("complex_c1"), "--form", "std", "--x", "one", "--y", "i",
                           "--kind", "all", "--json")
        doc = json.loads(out)
        assert code == 0
        assert doc["euclidean"]["theta"] == pytest.approx(np.pi / 2)
        assert doc["complex-cos"]["cos_value"] == pytest.approx([0.0, -1.0])
        assert doc["hermitian"]["theta"] == pytest.approx(0.0, abs=1e-7)
        assert set(doc) == {"euclidean", "complex-cos", "hermitian", "pseudo", "kahler"}

    def test_kahler_on_real_is_math_error(self, capsys):
        code, _, err = run(capsys, "angle", fx("standard_r2"), "--form", "I", "--x", "e1", "--y", "e2",
                           "--kind", "kahler")
        assert code == 3 and "KindRequiresComplex" in err

    def test_unknown_name(self, capsys):
        code, out, err = run(capsys, "angle", fx("standard_r2"), "--form", "Q", "--x", "e1", "--y", "e2")
        assert code == 2 and out == "" and "'Q'" in err


class TestCheckConformal:
    def test_doubled(self, capsys):
        code, out, _ = run(capsys, "check-conformal", fx("scaled_by_2"), "--g1", "I", "--g2", "twoI", "--json")
        doc = json.loads(out)
        assert code == 0
        assert doc["verdict"] == "conformal" and doc["factor_c"] == 2.0
        assert doc["suite"]["consistent"] is True

    def test_skewed(self, capsys):
        code, out, _ = run(capsys, "check-conformal", fx("skewed_plane"), "--g1", "I", "--g2", "G2",
                           "--theta0", "pi/4", "--theta0", "2pi/3", "--json")
        doc = json.loads(out)
        assert code == 1
        assert doc["verdict"] == "not-conformal"
        w = doc["witness"]
        x, y = np.array(w["x"]), np.array(w["y"])
        G2 = np.array([[1, -0.5], [-0.5, 0.5]])
        assert abs(x @ y) <= 1e-15
        assert y @ G2 @ x == pytest.approx(w["inner_in_2"], abs=1e-15)
        assert all(not e["same"] for e in doc["fixed_angle"].values())
        assert all(v in ("fail", "n/a") for k, v in doc["suite"].items() if k != "consistent")

    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "check-conformal", fx("skewed_plane"), "--g1", "I", "--g2", "G2")
        lines = kv(out)
        assert code == 1
        assert lines["verdict"] == "not-conformal"
        assert lines["witness.x"].startswith("[")

    def test_mismatched_dims(self, capsys, tmp_path):
        doc = json.loads(fx("standard_r2").read_text())
        doc["matrices"]["big"] = np.eye(3).tolist()
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(doc))
        code, out, err = run(capsys, "check-conformal", p, "--g1", "I", "--g2", "big")
        assert code == 2 and out == ""

    def test_tol_flag(self, capsys, tmp_path):
        prob = ProblemFile(ScalarField.REAL, 2, {"A": np.eye(2), "B": np.diag([1.0, 1.0 + 1e-6])})
        p = tmp_path / "near.json"
        dump(prob, p)
        assert run(capsys, "check-conformal", p, "--g1", "A", "--g2", "B")[0] == 1
        assert run(capsys, "check-conformal", p, "--g1", "A", "--g2", "B", "--tol", "1e-5")[0] == 0


class TestPolarize:
    def test_skewed(self, capsys):
        code, out, _ = run(capsys, "polarize", fx("skewed_plane"), "--form", "G2", "--x", "e1", "--y", "e2", "--json")
        doc = json.loads(out)
        assert code == 0
        assert doc["value"] == pytest.approx(-0.5, abs=1e-15)
        assert doc["discrepancy"] <= 1e-10

    def test_identity(self, capsys):
        code, out, _ = run(capsys, "polarize", fx("standard_r2"), "--form", "I", "--x", "e1", "--y", "e2")
        assert code == 0 and float(kv(out)["value"]) == 0.0

    def test_random_complex_file(self, capsys, tmp_path):
        rng = np.random.default_rng(4)
        vecs = {f"v{i}": random_vector(rng, ScalarField.COMPLEX, 4) for i in range(20)}
        prob = ProblemFile(ScalarField.COMPLEX, 4, {"G": random_gram_matrix(rng, ScalarField.COMPLEX, 4)}, vecs)
        p = tmp_path / "rand.json"
        dump(prob, p)
        for i in range(10):
            code, out, _ = run(capsys, "polarize", p, "--form", "G", "--x", f"v{2 * i}", "--y", f"v{2 * i + 1}",
                               "--json")
            assert code == 0 and json.loads(out)["discrepancy"] <= 1e-10


class TestWitness:
    def test_skewed(self, capsys):
        code, out, _ = run(capsys, "witness", fx("skewed_plane"), "--g1", "I", "--g2", "G2", "--theta0", "pi/6",
                           "--json")
        doc = json.loads(out)
        assert code == 0
        assert doc["orthogonality"]["kind"] == "orthogonality-mismatch"
        fa = doc["fixed_angle_0.5235987756"]
        assert fa["angle_in_1"] == pytest.approx(np.pi / 6, abs=1e-12)
        assert abs(fa["angle_in_2"] - np.pi / 6) > 1e-3

    def test_conformal_has_none(self, capsys):
        code, out, err = run(capsys, "witness", fx("scaled_by_2"), "--g1", "I", "--g2", "twoI")
        assert code == 3 and out == "" and "FormsAreConformal" in err

    def test_theta_out_of_range(self, capsys):
        code, _, err = run(capsys, "witness", fx("skewed_plane"), "--g1", "I", "--g2", "G2", "--theta0", "pi")
        assert code == 2 and "ThetaOutOfRange" in err


class TestMetricField:
    def test_varying(self, capsys):
        code, out, _ = run(capsys, "metric-field", fx("metric_varying"), "--json")
        doc = json.loads(out)
        assert code == 0 and doc["verdict"] == "ConformalVarying"
        for row in doc["points"]:
            assert row["factor"] == pytest.approx(1 + row["point"][0] ** 2, rel=1e-8)

    def test_defect(self, capsys):
        code, out, _ = run(capsys, "metric-field", fx("metric_defect"), "--theta0", "pi/3", "--json")
        doc = json.loads(out)
        assert code == 1 and doc["verdict"] == "NotConformal"
        assert doc["failing_point"] == [0.5, -0.5]
        flags = [r["same_angle_1.047197551"] for r in doc["points"]]
        assert flags == [r["conformal"] for r in doc["points"]]

    def test_constant(self, capsys, tmp_path):
        doc = json.loads(fx("metric_defect").read_text())
        doc["grid"]["g2"] = ["I"] * len(doc["grid"]["g2"])
        p = tmp_path / "const.json"
        p.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "metric-field", p)
        assert code == 0 and out.splitlines()[0] == "verdict=ConformalConstant"

    def test_no_grid(self, capsys):
        code, out, err = run(capsys, "metric-field", fx("standard_r2"))
        assert code == 2 and out == ""


def test_json_is_deterministic(capsys):
    argv = ["check-conformal", fx("skewed_plane"), "--g1", "I", "--g2", "G2", "--theta0", "pi/3", "--json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_dumps_uses_17_digits():
    assert dumps({"b": 0.1, "a": [1.0, 2]}) == '{\n  "a": [1, 2],\n  "b": 0.10000000000000001\n}'
    assert json.loads(dumps({"x": np.pi})) == {"x": np.pi}
    assert dumps(float("nan")) == "null"


@pytest.mark.parametrize("text,value", [("pi/4", np.pi / 4), ("2pi/3", 2 * np.pi / 3), ("2*pi/3", 2 * np.pi / 3),
                                        ("0.5", 0.5), ("pi", np.pi)])
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value)


def test_bad_arguments(capsys):
    assert run(capsys, "angle")[0] == 2
    assert run(capsys, "check-conformal", fx("skewed_plane"), "--g1", "I", "--g2", "G2", "--scan-steps", "0")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rigidangles", "check-conformal", str(fx("scaled_by_2")),
                           "--g1", "I", "--g2", "twoI"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "factor_c=2" in proc.stdout


def test_fixture_names_resolve(capsys):
    code, out, _ = run(capsys, "check-conformal", "scaled_by_2", "--g1", "I", "--g2", "twoI")
    assert code == 0 and kv(out)["factor_c"] == "2"
    assert run(capsys, "angle", "example_3_5", "--form", "G2", "--x", "e1", "--y", "ones")[0] == 0
    assert run(capsys, "angle", "no_such_fixture", "--form", "G2", "--x", "e1", "--y", "ones")[0] == 2


@pytest.mark.parametrize("before", [True, False])
def test_global_flags_either_side(capsys, before):
    flags = ["--json", "--tol", "1e-5", "--scan-steps", "90", "--seed", "7"]
    tail = ["check-conformal", fx("skewed_plane"), "--g1", "I", "--g2", "G2"]
    code, out, _ = run(capsys, *(flags + tail if before else tail + flags))
    assert code == 1 and json.loads(out)["verdict"] == "not-conformal"


def test_global_tol_before_subcommand(capsys, tmp_path):
    prob = ProblemFile(ScalarField.REAL, 2, {"A": np.eye(2), "B": np.diag([1.0, 1.0 + 1e-6])})
    p = tmp_path / "near.json"
    dump(prob, p)
    assert run(capsys, "--tol", "1e-5", "check-conformal", p, "--g1", "A", "--g2", "B")[0] == 0
