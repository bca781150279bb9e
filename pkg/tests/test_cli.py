import io
import json
import subprocess
import sys

import pytest

from torusqm.cli import run
from torusqm.hurwitz import n_connected_series
from torusqm.quasimodular import QMPoly, fit_quasimodular, parse_qmpoly
from torusqm.series import QSeries


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_count_json():
    doc = call_json("count", "--profile", "(2),(2)", "--order", "6", "--threads", "1")
    assert doc["schema"] == 1
    assert doc["command"] == "count"
    assert QSeries.from_json(doc["series"]) == n_connected_series(((2,), (2,)), 6)


def test_count_fit_round_trip():
    doc = call_json("count", "--profile", "(2),(2)", "--order", "16", "--fit")
    fit = QMPoly.from_json(doc["qmpoly"])
    assert fit == parse_qmpoly(doc["qmpoly_text"])
    # refitting the emitted series reproduces the emitted polynomial
    assert fit_quasimodular(QSeries.from_json(doc["series"]), 6) == fit


def test_output_is_deterministic():
    argv = ("graphs", "--profile", "(2),(2)", "--order", "6", "--per-graph")
    _, a, _ = call(*argv, "--threads", "1")
    _, b, _ = call(*argv, "--threads", "2")
    assert a == b


def test_count_oracle():
    doc = call_json("count", "--profile", "(3)", "--order", "4", "--oracle")
    assert all(c["pass"] for c in doc["checks"])


def test_text_format():
    code, out, _ = call("zconst", "--power", "2", "--fit", "--format", "text")
    assert code == 0
    assert "-2*G2 + 1/6" in out


def test_triple():
    doc = call_json("triple", "--win", "2", "--wout", "1,1", "--mu", "(2)")
    # one transposition joining two sheets; 1 cover, |Aut| of the output side is 2
    assert (doc["a"], doc["a_prime"]) == ("1", "1")


def test_cterm_and_sv_edge():
    doc = call_json("cterm", "--graph", "1-2,1-2,1-2", "--order", "8")
    assert all(c["pass"] for c in doc["checks"])
    doc = call_json("cterm", "--graph", "1-2,1-2,1-2", "--order", "8", "--sv-edge", "0")
    assert all(c["pass"] for c in doc["checks"])


def test_sv_per_graph():
    doc = call_json("sv", "--profile", "(3)", "--p", "-1", "--order", "6", "--per-graph", "--variant", "prime")
    assert all(c["pass"] for c in doc["checks"])


def test_ssz():
    doc = call_json("ssz-check", "--m", "1", "--n", "1", "--ell", "3", "--radius", "5")
    assert doc["command"] == "ssz-check"


@pytest.mark.parametrize(
    "argv",
    [
        ("count", "--profile", "(1)"),
        ("count", "--profile", "(2"),
        ("count", "--profile", "(2)", "--order", "-1"),
        ("count",),
        ("nonsense",),
        ("count", "--profile", "(2)", "--threads", "0"),
        ("selftest", "--criteria", "42"),
    ],
)
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


def test_fit_failure_exit():
    code, _, err = call("count", "--profile", "(2),(2)", "--order", "5", "--fit")
    assert code == 3
    assert "fit" in err


def test_budget_exit():
    code, _, _ = call("count", "--profile", "(2),(2)", "--order", "6", "--oracle", "--budget", "1000")
    assert code == 5


def test_selftest_subset():
    doc = call_json("selftest", "--criteria", "1,5")
    names = {c["name"].split(":")[0] for c in doc["checks"]}
    assert names == {"1", "5"}
    assert all(c["pass"] for c in doc["checks"])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "torusqm", "count", "--profile", "(3)", "--order", "4", "--format", "text"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.startswith("series:")
