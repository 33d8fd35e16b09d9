import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from klab.cli import main
from klab.graphs import Graph, complete


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_by_invariant(text):
    return {row["invariant"]: row for row in csv.DictReader(io.StringIO(text))}


def test_generate_sn2(capsys):
    code, out, _ = run(capsys, "generate", "--n", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["n_vertices"] == 8 and len(doc["edges"]) == 10


def test_generate_with_deletions(capsys, tmp_path):
    target = tmp_path / "g.json"
    code, out, _ = run(capsys, "generate", "--n", "4", "--delete", "2,3", "--out", str(target))
    assert code == 0 and out == ""
    assert Graph.from_json(target.read_text()).edge_count == 8


def test_generate_csv(capsys):
    code, out, _ = run(capsys, "generate", "--n", "2", "--format", "csv")
    assert out.splitlines() == ["u,v", "0,1", "0,2", "1,3", "2,3"]


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "--n", "2", "--delete", "1,2"],
        ["generate", "--n", "1"],
        ["generate", "--n", "3", "--delete", "4"],
        ["generate", "--n", "3", "--delete", "x"],
    ],
)
def test_generate_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("klab: error:")


def test_generate_disconnected_message(capsys):
    _, _, err = run(capsys, "generate", "--n", "2", "--delete", "1,2")
    assert "disconnected" in err


def test_generate_requires_n(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["generate"])
    assert exc.value.code == 2


def test_invariants_sn2(capsys):
    code, out, _ = run(capsys, "invariants", "--n", "2")
    assert code == 0
    rows = rows_by_invariant(out)
    assert rows["Kf"]["oracle"] == rows["Kf"]["formula"] == rows["Kf"]["spectral"] == "5"
    assert rows["Kf*"]["oracle"] == "20"
    assert rows["tau"]["oracle"] == "4"
    assert rows["W"]["oracle"] == "8"
    assert rows["Gut"]["oracle"] == "32"
    assert all(r["agree"] == "True" for r in rows.values())


def test_invariants_rational_rendering(capsys):
    code, out, _ = run(capsys, "invariants", "--n", "4", "--delete", "1,2")
    assert code == 0
    rows = rows_by_invariant(out)
    assert rows["Kf"]["oracle"] == "134/3"
    assert rows["tau"]["oracle"] == "6"
    assert rows["W"]["oracle"] == "62"
    assert rows["Kf"]["center_deleted"] == "True" and rows["Kf"]["deleted"] == "1,2"


def test_invariants_json(capsys):
    code, out, _ = run(capsys, "invariants", "--n", "4", "--delete", "2,3", "--format", "json")
    doc = json.loads(out)[0]
    kf = next(r for r in doc["invariants"] if r["invariant"] == "Kf")
    assert kf["oracle"] == {"num": 46, "den": 1}
    assert doc["all_agree"] and code == 0


def test_invariants_statement_variant_exit_1(capsys):
    code, out, _ = run(capsys, "invariants", "--n", "2", "--delete", "2", "--variant", "statement")
    assert code == 1
    assert rows_by_invariant(out)["Kf"]["formula"] == "-30"


def test_invariants_file(capsys, tmp_path):
    path = tmp_path / "k4.json"
    path.write_text(complete(4).to_json())
    code, out, _ = run(capsys, "invariants", "--file", str(path))
    assert code == 0
    rows = rows_by_invariant(out)
    assert rows["Kf"]["oracle"] == "3"
    assert rows["tau"]["oracle"] == "16"
    assert all(r["formula"] == "" for r in rows.values())
    assert float(rows["Kf"]["spectral"]) == pytest.approx(3)


def test_invariants_file_errors(capsys, tmp_path):
    code, _, err = run(capsys, "invariants", "--file", str(tmp_path / "missing.json"))
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "invariants", "--file", str(bad))[0] == 2
    split = tmp_path / "split.json"
    split.write_text(json.dumps({"n_vertices": 4, "edges": [[0, 1], [2, 3]]}))
    code, _, err = run(capsys, "invariants", "--file", str(split))
    assert code == 2 and "connected" in err


def test_invariants_exact_cap(capsys, monkeypatch):
    code, _, err = run(capsys, "invariants", "--n", "101")
    assert code == 2 and "cap" in err
    monkeypatch.setenv("KLAB_MAX_EXACT", "8")
    assert run(capsys, "invariants", "--n", "5")[0] == 2
    assert run(capsys, "invariants", "--n", "4")[0] == 0
    monkeypatch.setenv("KLAB_MAX_EXACT", "lots")
    assert run(capsys, "invariants", "--n", "4")[0] == 2


def test_invariants_float_mode(capsys):
    code, out, _ = run(capsys, "invariants", "--n", "6", "--delete", "1,3", "--mode", "float")
    assert code == 0
    rows = rows_by_invariant(out)
    assert "log_tau" in rows and "tau" not in rows
    assert float(rows["Kf"]["oracle"]) == pytest.approx(float(Fraction(rows["Kf"]["formula"])))


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2..6")
    assert code == 0
    assert "total failures: 0" in out
    assert "FAIL" not in out


def test_verify_statement_reports_failures(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2..5", "--variant", "statement")
    assert code == 0
    assert "FAIL  S2_n,r Kf [center kept]" in out
    assert "oracle 10 vs formula -30" in out
    assert "PASS  S2_n,r Kf [center deleted]" in out


def test_verify_ratio(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2..6", "--ratio")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 7
    assert lines[-1].startswith("limits")
    code, out, _ = run(capsys, "verify", "--n", "10,10000", "--ratio")
    assert code == 0 and out.splitlines()[2].startswith("10000,0.5333")


def test_verify_config_errors(capsys):
    assert run(capsys, "verify", "--n", "13")[0] == 2
    assert run(capsys, "verify", "--n", "5", "--subsets", "3")[0] == 2
    assert run(capsys, "verify", "--n", "5", "--subsets", "many", "--seed", "1")[0] == 2
    assert run(capsys, "verify", "--n", "1..3")[0] == 2


def test_sweep_csv_r0(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "2..20", "--r", "0")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    kf = [r for r in rows if r["invariant"] == "Kf"]
    assert [int(r["n"]) for r in kf] == list(range(2, 21))
    assert all(r["agree"] == "True" for r in rows)


def test_sweep_json_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        argv = ["sweep", "--n", "5", "--subsets", "10", "--seed", "42", "--format", "json", "--out", str(target)]
        assert run(capsys, *argv)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    per_r = {}
    for rep in doc:
        per_r.setdefault(rep["r"], set()).add(tuple(rep["deleted"]))
    assert {r: len(s) for r, s in per_r.items()} == {0: 1, 1: 5, 2: 10, 3: 10, 4: 5}


def test_sweep_sampled_subsets_are_seeded(capsys):
    argv = ["sweep", "--n", "8", "--r", "3", "--subsets", "4", "--seed"]
    out1 = run(capsys, *argv, "1")[1]
    out2 = run(capsys, *argv, "1")[1]
    out3 = run(capsys, *argv, "2")[1]
    assert out1 == out2 and out1 != out3


def test_sweep_float_large_n(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "2000", "--r", "0", "--mode", "float", "--no-oracle")
    assert code == 0
    ratio = rows_by_invariant(out)["Kf/W"]
    assert abs(float(ratio["formula"]) - 8 / 15) < 1e-3


def test_console_script_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "klab.cli", "invariants", "--n", "3"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert rows_by_invariant(proc.stdout)["Kf"]["oracle"] == "71/5"
