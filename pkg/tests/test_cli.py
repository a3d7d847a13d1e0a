import json
import subprocess
import sys

import pytest

from dmkit.cli import main

RING = {"vars": ["u", "v"], "field": "Q"}
DOCS = {
    "rush_f.json": {"ring": RING, "terms": [{"a": "v", "j": 0, "unit": "one"}, {"a": "1", "j": 1, "unit": "one"}]},
    "rush_g.json": {"ring": RING, "terms": [{"a": "u", "j": 0, "unit": "one"}, {"a": "v", "j": 1, "unit": "geom"}]},
    "gauss_f.json": {"ring": RING, "coeffs": ["u", "v"]},
    "gauss_g.json": {"ring": RING, "coeffs": ["v", "u"]},
    "zero.json": {"ring": RING, "terms": []},
    "bad.json": {"ring": RING, "terms": [{"a": "u", "j": 0, "unit": {"coeffs": ["u"]}}]},
    "other_ring.json": {"ring": {"vars": ["u", "v"], "field": "Fp:5"}, "coeffs": ["u"]},
}


@pytest.fixture
def files(tmp_path, monkeypatch):
    monkeypatch.delenv("DMKIT_DMAX", raising=False)
    for name, doc in DOCS.items():
        (tmp_path / name).write_text(json.dumps(doc))
    return lambda name: str(tmp_path / name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_content(files, capsys):
    code, out, _ = run(capsys, "content", files("rush_g.json"))
    assert code == 0 and "content     (u, v)" in out
    code, out, _ = run(capsys, "content", files("zero.json"))
    assert code == 0 and "(0)" in out
    code, out, _ = run(capsys, "content", files("rush_g.json"), "--json")
    assert json.loads(out)["generators"] == ["u", "v"]


def test_schema_error_exit_and_path(files, capsys):
    code, _, err = run(capsys, "content", files("bad.json"))
    assert code == 2 and "terms/0/unit/coeffs/0" in err


def test_missing_file(files, capsys):
    code, _, err = run(capsys, "content", files("nope.json"))
    assert code == 2 and "cannot read" in err


def test_usage_errors(files, capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "dm", files("gauss_f.json"), files("gauss_g.json"), "--k", "0")[0] == 2
    assert run(capsys, "dm", files("gauss_f.json"), files("other_ring.json"))[0] == 2
    assert run(capsys, "dm", files("gauss_f.json"), files("gauss_g.json"), "--point", "1")[0] == 2
    assert run(capsys, "--version")[0] == 0


def test_dm_rush_defaults(files, capsys):
    code, out, _ = run(capsys, "dm", files("rush_f.json"), files("rush_g.json"), "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["verdict"] == "verified" and rep["k"] == 2 and rep["d_cert"] <= 2
    assert rep["k_source"] == "mu_at_point"


def test_dm_gauss_refuted(files, capsys):
    code, out, _ = run(capsys, "dm", files("gauss_f.json"), files("gauss_g.json"), "--k", "1")
    assert code == 1 and "refuted" in out and "u^2" in out


def test_dm_min_exponent(files, capsys):
    code, out, _ = run(capsys, "dm", files("rush_f.json"), files("rush_g.json"), "--min-exponent", "--json")
    assert code == 0 and json.loads(out)["min_exponent"] == 1


def test_dm_gauss_scan_and_reduction(files, capsys):
    code, out, _ = run(capsys, "dm", files("gauss_f.json"), files("gauss_g.json"), "--k", "2",
                       "--min-exponent", "--reduction", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["exponent_scan"] == [{"k": 1, "verdict": "refuted"}, {"k": 2, "verdict": "verified"}]
    assert rep["min_exponent"] == 2 and rep["reduction_number"] == 1


def test_dm_json_is_byte_identical(files, capsys):
    argv = ("dm", files("gauss_f.json"), files("gauss_g.json"), "--k", "2", "--certificates", "--seed", "5", "--json")
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]
    assert json.loads(first)["seed"] == 5 and json.loads(first)["certificates"]


def test_env_dmax_gives_inconclusive(files, capsys, monkeypatch):
    monkeypatch.setenv("DMKIT_DMAX", "0")
    code, out, _ = run(capsys, "dm", files("rush_f.json"), files("rush_g.json"), "--json")
    assert code == 3 and json.loads(out)["verdict"] == "inconclusive"
    # an explicit flag beats the environment
    assert run(capsys, "dm", files("rush_f.json"), files("rush_g.json"), "--dmax", "4")[0] == 0
    monkeypatch.setenv("DMKIT_DMAX", "lots")
    assert run(capsys, "dm", files("rush_f.json"), files("rush_g.json"))[0] == 2


def test_reduction(files, capsys):
    code, out, _ = run(capsys, "reduction", files("gauss_f.json"), files("gauss_g.json"), "--k", "2", "--json")
    assert code == 0 and json.loads(out)["reduction_number"] == 1
    code, _, _ = run(capsys, "reduction", files("gauss_f.json"), files("gauss_g.json"), "--k", "1")
    assert code == 1


def test_counterexample(capsys):
    code, out, _ = run(capsys, "counterexample", "--k", "1")
    assert code == 0 and "inequality certified; witness a0*b1" in out


def test_rush(capsys):
    code, out, _ = run(capsys, "rush")
    assert code == 0
    assert "u*v, v^2 + u, v^2 + v" in out
    assert out.count("valid") == 2


def test_mu(capsys):
    code, out, _ = run(capsys, "mu", "u,v,u+v", "--point", "0,0")
    assert code == 0 and out.splitlines()[0] == "2"
    code, out, _ = run(capsys, "mu", "u,v", "--point", "1,1", "--json")
    assert json.loads(out)["mu"] == 1
    assert run(capsys, "mu", "u,X")[0] == 2


def test_corpus_deterministic_and_parallel(capsys):
    argv = ("corpus", "--seed", "3", "--count", "6", "--json")
    a = run(capsys, *argv)
    b = run(capsys, *argv, "--jobs", "2")
    assert a[0] == 0 and a[1] == b[1]
    assert json.loads(a[1])["summary"]["Q[u,v]"]["verified"] == 6


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "dmkit.cli", "dm", files("gauss_f.json"), files("gauss_g.json"),
                           "--k", "1"], capture_output=True, text=True)
    assert proc.returncode == 1 and "refuted" in proc.stdout
