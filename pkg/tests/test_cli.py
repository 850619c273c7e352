import json

from holomorph.cli import main
from holomorph.groups import dihedral, symmetric
from holomorph.io import read_ctab, read_pgrp, write_ctab


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_small_groups(tmp_path, capsys):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--group", "builtin:dihedral:4", "--group", "builtin:quaternion:8", "--report", str(report))
    assert code == 0
    data = json.loads(report.read_text())
    assert data["summary"] == {"groups_checked": 2, "violations": 0}
    labels = [r["label"] for r in data["records"]]
    assert labels == sorted(labels)
    for r in data["records"]:
        assert r["theorem_ok"] and r["f_value"] <= r["order"]
        assert "runtime_ms" not in r
        assert r["mao"] <= r["maffo"] <= r["f_value"]
    assert "violations: 0" in out


def test_verify_timings_opt_in(tmp_path, capsys):
    report = tmp_path / "r.json"
    assert run(capsys, "verify", "--group", "cyclic:5", "--report", str(report), "--timings")[0] == 0
    assert "runtime_ms" in json.loads(report.read_text())["records"][0]


def test_verify_manifest_and_ctab(tmp_path, capsys):
    write_ctab(symmetric(3), tmp_path / "s3.ctab")
    (tmp_path / "m.json").write_text(json.dumps({"entries": ["ctab:s3.ctab", "builtin:cyclic:6"]}))
    report = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--corpus", str(tmp_path / "m.json"), "--report", str(report))
    assert code == 0
    recs = json.loads(report.read_text())["records"]
    assert {r["f_value"] for r in recs} == {6}


def test_verify_is_deterministic_across_jobs(tmp_path, capsys):
    groups = ["builtin:alternating:4", "builtin:cyclic:3*symmetric:3", "builtin:quaternion:32", "builtin:dihedral:20"]
    args = [a for g in groups for a in ("--group", g)]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", *args, "--report", str(a), "--jobs", "1")[0] == 0
    assert run(capsys, "verify", *args, "--report", str(b), "--jobs", "3")[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_bad_inputs(tmp_path, capsys):
    assert run(capsys, "verify", "--group", "ctab:/nonexistent.ctab")[0] == 2
    bad = tmp_path / "bad.ctab"
    bad.write_text("2\n0 1\n1 1\n")
    assert run(capsys, "verify", "--group", f"ctab:{bad}")[0] == 2
    assert run(capsys, "verify", "--group", "cyclic:4", "--jobs", "0")[0] == 2
    for sub in ("a", "b"):
        (tmp_path / sub).mkdir()
        write_ctab(dihedral(3), tmp_path / sub / "d.ctab")
    code, _, err = run(capsys, "verify", "--group", f"ctab:{tmp_path / 'a' / 'd.ctab'}", "--group", f"ctab:{tmp_path / 'b' / 'd.ctab'}")
    assert code == 2 and "duplicate label" in err
    assert run(capsys, "verify", "--corpus", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "verify", "--group", "no_such_family:3")[0] == 2


def test_f_command(capsys):
    code, out, _ = run(capsys, "f", "symmetric:4")
    data = json.loads(out)
    assert code == 0 and data["f_value"] == 12 and data["theorem_ok"]
    code, out, _ = run(capsys, "f", "symmetric:4", "--class-reps")
    assert json.loads(out)["f_value"] == 12


def test_violation_exit_code(monkeypatch, capsys):
    from holomorph import affine

    real = affine.frak_f

    def inflated(G, aut=None, **kw):
        res = real(G, aut, **kw)
        res.value = G.order + 1
        return res

    monkeypatch.setattr(affine, "frak_f", inflated)
    code, out, _ = run(capsys, "f", "cyclic:4")
    assert code == 1 and json.loads(out)["theorem_ok"] is False


def test_scan_commands(tmp_path, capsys):
    code, out, err = run(capsys, "scan", "psl2", "--q-max", "1000", "--expect", "(2,3),(3,3),(5,3)")
    assert code == 0 and "match" in err
    assert json.loads(out)["exceptions"] == [[2, 3], [3, 3], [5, 3]]
    assert run(capsys, "scan", "psl2", "--q-max", "1000", "--expect", "(2,3)")[0] == 1
    path = tmp_path / "res.json"
    code, _, _ = run(capsys, "scan", "psld", "--d-max", "10", "--q-max", "100", "--expect", "(3,2),(3,4)", "--json", str(path))
    assert code == 0
    assert all({"d", "p", "f", "lhs", "rhs", "holds"} <= set(r) for r in json.loads(path.read_text()))
    assert run(capsys, "scan", "psld", "--q-max", "100")[0] == 2
    assert run(capsys, "scan", "psl2", "--q-max", "100", "--expect", "nonsense")[0] == 2
    assert run(capsys, "scan", "psl7", "--q-max", "100")[0] == 2


def test_simple_command(capsys):
    code, out, _ = run(capsys, "simple", "--case", "psl2_8")
    assert code == 0 and json.loads(out)["passed"] is True
    assert run(capsys, "simple", "--case", "psl2_125")[0] == 2
    assert run(capsys, "simple", "--case", "psl3_4")[0] == 2


def test_matrix_lemma_command(capsys):
    code, out, _ = run(capsys, "matrix-lemma", "--p", "2", "--d", "2", "--exhaustive")
    assert code == 0 and json.loads(out)["details"]["elements"] == 6
    code, out, _ = run(capsys, "matrix-lemma", "--p", "3", "--d", "3", "--samples", "200")
    assert code == 0
    assert run(capsys, "matrix-lemma", "--p", "4", "--d", "3")[0] == 2


def test_export(tmp_path, capsys):
    out = tmp_path / "s4.pgrp"
    assert run(capsys, "export", "symmetric:4", "--out", str(out))[0] == 0
    assert read_pgrp(out).order == 24
    out = tmp_path / "aut.pgrp"
    assert run(capsys, "export", "quaternion:8", "--aut", "--out", str(out))[0] == 0
    assert read_pgrp(out).order == 24
    out = tmp_path / "d5.ctab"
    assert run(capsys, "export", "dihedral:5", "--format", "ctab", "--out", str(out))[0] == 0
    assert read_ctab(out).order == 10
    assert run(capsys, "export", "cyclic:5", "--out", str(tmp_path / "c5.pgrp"))[0] == 2


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["--help"]) == 0
