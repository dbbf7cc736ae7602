import json
import shutil
import subprocess
import sys

import pytest

from koszulkit import dg, golden
from koszulkit.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_weyl_w0_table(capsys):
    code, out, _ = call(capsys, "weyl", "w0-table", "--type", "A2", "--p", "5")
    assert code == 0
    assert out["p"] == 5 and len(out["rows"]) == 6


def test_weyl_tau0_and_walls(capsys):
    code, out, _ = call(capsys, "weyl", "tau0", "--type", "A2")
    assert code == 0 and out["length"] == out["length_by_roots"] == 1
    code, out, _ = call(capsys, "weyl", "walls", "--type", "A2", "--p", "5", "--mu=-1,2")
    assert code == 0
    assert out["walls"] == [{"n": 0, "root": [1, 0]}] and out["W0_mu_size"] == 3


def test_braid_verify_relations(capsys):
    code, out, _ = call(capsys, "braid", "verify-relations", "--type", "A1", "--radius", "3")
    assert code == 0
    assert all(not r["failures"] for r in out["relations"])
    # negative control: the unrescaled normalization is reported, with exit 1
    code, out, _ = call(capsys, "braid", "verify-relations", "--type", "A1", "--radius", "3", "--normalization", "q")
    assert code == 1 and any(r["failures"] for r in out["relations"])


def test_dg_cohomology_of_koszul_complex(capsys, tmp_path):
    path = tmp_path / "k3.json"
    path.write_text(json.dumps(dg.to_json(dg.koszul_complex(3))))
    code, out, _ = call(capsys, "dg", "cohomology", "--in", str(path))
    assert code == 0
    assert {k: v for k, v in out.items() if v} == {"(0,0)": 1}


def test_dg_apply_requires_right_kind(capsys, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps(dg.to_json(dg.trivial("S", 2))))
    code, out, _ = call(capsys, "dg", "apply-A", "--in", str(path))
    assert code == 0 and out["algebra"] == "T"
    code, _, err = call(capsys, "dg", "apply-B", "--in", str(path), "--window", "0:4,-4:0")
    assert code == 2 and "apply-B" in err


def test_algebra_is_koszul(capsys):
    code, out, _ = call(capsys, "algebra", "is-koszul", "--name", "lambda2", "--nmax", "4")
    assert code == 0 and out == {"verdict": "koszul_up_to", "n": 4}
    code, out, _ = call(capsys, "algebra", "is-koszul", "--name", "kx_x3")
    assert out == {"verdict": "fails_at", "step": 2, "degrees": [3]}


def test_algebra_from_file_and_check_criterion(capsys, tmp_path):
    code, exported, _ = call(capsys, "algebra", "export", "--name", "quiver_a3_rel")
    path = tmp_path / "a.json"
    path.write_text(json.dumps(exported))
    code, out, _ = call(capsys, "algebra", "check-criterion", "--in", str(path), "--nmax", "4")
    assert code == 0 and out["checks"]["hom_dims_match"]
    code, out, _ = call(capsys, "algebra", "check-criterion", "--name", "kx_x3", "--nmax", "4")
    assert code == 1 and "refused" in out


def test_exit_codes(capsys, tmp_path):
    assert call(capsys, "weyl", "tau0", "--type", "X9")[0] == 2
    assert call(capsys, "nonsense")[0] == 2
    assert call(capsys, "algebra", "is-koszul", "--name", "no_such_algebra")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call(capsys, "dg", "cohomology", "--in", str(bad))[0] == 2
    assert call(capsys, "dg", "cohomology")[0] == 2


def test_validate_reports_violation(capsys, tmp_path):
    m = dg.make_module("S", 1, [(0, 0), (1, 0), (2, 0)], d=[{1: 1}, {2: 1}, {}])
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(dg.to_json(m)))
    code, out, _ = call(capsys, "dg", "validate", "--in", str(path))
    assert code == 1 and not out["valid"]


def test_output_is_deterministic(tmp_path):
    outs = []
    for k in range(2):
        target = tmp_path / f"o{k}.json"
        assert run(["algebra", "ext-dual", "--name", "lambda2", "--nmax", "3", "--out", str(target)]) == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]
    a = tmp_path / "r1.json"
    b = tmp_path / "r2.json"
    run(["dg", "random", "--seed", "7", "--out", str(a)])
    run(["dg", "random", "--seed", "7", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_golden_tables_clean():
    assert not any(golden.check().values())


def test_corrupted_golden_table_is_named(capsys, tmp_path):
    target = tmp_path / "golden"
    shutil.copytree(golden.GOLDEN_DIR, target)
    f = target / "ext_lambda2.json"
    data = json.loads(f.read_text())
    data["ext"]["0"]["(2,0,2)"] = 4
    f.write_text(json.dumps(data))
    code, out, _ = call(capsys, "selftest", "--only", "1", "--golden-dir", str(target))
    assert code == 1
    assert out["golden"]["ext_lambda2"] == ["/ext/0/(2,0,2): 4 != 3"]
    assert not any(v for k, v in out["golden"].items() if k != "ext_lambda2")


def test_selftest_only(capsys):
    code, out, err = call(capsys, "selftest", "--only", "1,3")
    assert code == 0 and out["passed"]
    assert [c["criterion"] for c in out["criteria"]] == [1, 3]
    assert err.count("PASS") == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "koszulkit.cli", "algebra", "list"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "lambda2" in json.loads(proc.stdout)["bundled"]
