import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from beadedjacobi import reduce, theta
from beadedjacobi.cli import run
from beadedjacobi.normalform import DiagramSum
from beadedjacobi.series import GradedSeries

from conftest import kronecker_datum

THETA = "e1: v1 -> v2 [t]\ne2: v1 -> v2\ne3: v1 -> v2\nor v1 = (e1.s, e2.s, e3.s)\nor v2 = (e3.t, e2.t, e1.t)\n"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    (tmp_path / "theta.txt").write_text(THETA)
    (tmp_path / "datum.json").write_text(kronecker_datum().to_json())
    one = GradedSeries.one(3)
    (tmp_path / "one.json").write_text(one.to_json())
    z = GradedSeries.from_sums([reduce(theta()) * 2], 3)
    (tmp_path / "z.json").write_text(z.to_json())
    return tmp_path


def test_normalize(files):
    code, out, _ = call("normalize", "--input", str(files / "theta.txt"))
    assert code == 0
    assert DiagramSum.from_text(out) == reduce(theta(beads=["t", 1, 1]))


def test_normalize_sum_cancels(files):
    text = "term 1\n" + THETA + "term -1\n" + THETA
    (files / "sum.txt").write_text(text)
    code, out, _ = call("normalize", "--input", str(files / "sum.txt"))
    assert code == 0 and "term" not in out


def test_surgery_rhs_and_contract(files):
    code, out, _ = call("surgery-rhs", "--input", str(files / "datum.json"))
    assert code == 0
    assert DiagramSum.from_text(out) == reduce(theta()) * -1
    legs = "e1: v1 -> v2; e2: v1 -> v3; e3: v1 -> v4; leg v2 = z(1,1,0); leg v3 = z(1,2,0); leg v4 = z(1,3,0)\n"
    legs += "e4: v5 -> v6; e5: v5 -> v7; e6: v5 -> v8; leg v6 = z(2,1,0); leg v7 = z(2,2,0); leg v8 = z(2,3,0)\n"
    (files / "legs.txt").write_text(legs)
    code, out2, _ = call("--threads", "2", "contract", "--input", str(files / "legs.txt"),
                         "--table", str(files / "datum.json"))
    assert code == 0 and out2 == out


def test_colorings_path(files):
    code, out, _ = call("colorings-path", "--input", str(files / "datum.json"), "--choice", "1,2,3;1,2,3",
                        "--check")
    assert code == 0
    assert DiagramSum.from_text(out) == reduce(theta()) * -1
    code, _, err = call("colorings-path", "--input", str(files / "datum.json"), "--budget", "10")
    assert code == 4 and err.startswith("error[budget]")


def test_exp_log_correct(files):
    code, out, _ = call("exp", "--input", str(files / "z.json"))
    assert code == 0
    (files / "Z.json").write_text(out)
    code, back, _ = call("log", "--input", str(files / "Z.json"))
    assert GradedSeries.from_json(back) == GradedSeries.from_json((files / "z.json").read_text())
    code, out, _ = call("correct", "--input", str(files / "one.json"), "--p1", "4")
    obj = json.loads(out)
    assert code == 0 and obj["anomaly_unknown_degrees"] == [3]
    assert GradedSeries.from_json(out)[1] == reduce(theta()) * Fraction(-1, 12)


def test_enumerate_and_counts():
    code, out, _ = call("enumerate", "--family", "Su", "--n", "1")
    assert code == 0 and len(out.splitlines()) == 8
    code, out, _ = call("enumerate", "--n", "2", "--limit", "4")
    assert len(out.splitlines()) == 4
    code, out, _ = call("counts", "--family", "Sl", "--n", "1")
    obj = json.loads(out)
    assert obj["labeled"] == 20 and obj["orbit_identity"] and obj["matchings"] == 15
    code, _, err = call("enumerate", "--n", "3")
    assert code == 4 and "budget" in err


def test_ihx_dim():
    code, out, _ = call("ihx-dim", "--n", "1", "--window", "0,0")
    assert code == 0 and json.loads(out)["dimension"] == 1
    code, _, err = call("ihx-dim", "--n", "1", "--window", "1,0")
    assert code == 3


def test_error_codes(files):
    (files / "bad.txt").write_text("e1: v1 => v2\n")
    code, _, err = call("normalize", "--input", str(files / "bad.txt"))
    assert code == 2 and err.startswith("error[parse]")
    code, _, err = call("normalize", "--input", str(files / "missing.txt"))
    assert code == 3
    code, _, err = call("normalize", "--input", str(files / "theta.txt"), "--delta", "t + 1")
    assert code == 3
    code, _, _ = call("correct", "--input", str(files / "one.json"), "--p1", "x")
    assert code == 2


def test_console_script(files):
    proc = subprocess.run([sys.executable, "-m", "beadedjacobi.cli", "counts", "--n", "1", "--family", "Su"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["labeled"] == 8
