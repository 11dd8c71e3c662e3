import json
import subprocess
import sys
from pathlib import Path

import pytest

from commensurators.cli import (
    ScenarioReport,
    cmd_eval,
    cmd_free_demo,
    cmd_kernel_check,
    cmd_surface_demo,
    main,
)
from commensurators.comm import shipped_iso_path

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_timing(doc):
    doc = dict(doc)
    doc.pop("timing")
    return doc


def test_free_demo_default(capsys):
    code, out, _ = run(capsys, "free-demo")
    assert code == 0
    assert "Word10: A^3*B*A*B^-1*A^2" in out
    assert out.startswith("free-demo: PASS")


def test_free_demo_json(capsys):
    code, out, _ = run(capsys, "free-demo", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["pass"]
    assert doc["details"]["Word10"] == "A^3*B*A*B^-1*A^2"
    checks = {c["description"]: c for c in doc["checks"]}
    assert checks["psi(A^-2) = A^-3"]["actual"] == "A^-3"
    assert checks["Index(K1) = Index(K2) = 6"]["actual"] == "6 = 6"
    assert checks["Word10 <> Word"]["pass"]


def test_free_demo_auto_matches_fixture():
    expected = json.loads((FIXTURES / "auto_psi_free_word10.json").read_text())["word10"]
    from commensurators.words import free_group
    F = free_group()
    report = cmd_free_demo(auto=True)
    assert report.passed
    assert F.word(report.details["Word10"]) == F.word(expected)


def test_free_demo_explicit_file_gets_exact_check():
    report = cmd_free_demo(shipped_iso_path("psi_free"))
    assert any(c.description == "Word10 (exact)" and c.passed for c in report.checks)


def test_free_demo_corrupted_file(tmp_path, capsys):
    doc = json.loads(shipped_iso_path("psi_free").read_text())
    doc["images"][1] = "B*A*B^-1*A"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "free-demo", "--psi-file", str(bad))
    assert code == 1
    assert "outside the codomain" in out


def test_free_demo_unreadable_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "free-demo", "--psi-file", str(bad))
    assert code == 2
    assert "error" in err
    code, _, _ = run(capsys, "free-demo", "--psi-file", str(tmp_path / "missing.json"))
    assert code == 2


def test_free_demo_wrong_group(capsys):
    code, _, err = run(capsys, "free-demo", "--psi-file", str(shipped_iso_path("psi_surface")))
    assert code == 2


def test_surface_demo(capsys):
    code, out, _ = run(capsys, "surface-demo", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["pass"]
    checks = {c["description"]: c for c in doc["checks"]}
    assert checks["psi(A^-2) = A^-3"]["pass"]
    assert checks["Word10 equals the reference output in the group"]["pass"]
    assert checks["Word10 * C^-1 is nontrivial"]["pass"]


def test_kernel_check(capsys):
    code, out, _ = run(capsys, "kernel-check", "--json")
    doc = json.loads(out)
    assert code == 0
    checks = {c["description"]: c for c in doc["checks"]}
    assert checks["rho(gamma) normalizes to 1"]["actual"] == "1 (length 0)"


def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "F2", "letters_free",
                       "a^-1 b a b^-1 a^-1 b a b^-1 a^-1", "B*A*B^-1*A^-1")
    assert code == 0 and out.strip() == "A^3*B*A*B^-1*A^2"
    code, out, _ = run(capsys, "eval", "F2", "letters_free", "", "B*A^2")
    assert out.strip() == "B*A^2"
    code, out, _ = run(capsys, "eval", "F2", "letters_free", "a a^-1", "B", "--verdict")
    assert out.split() == ["B", "trivial"]


def test_eval_verdict_json():
    out = cmd_eval("F2", "letters_free", "a^-1 b a b^-1 a^-1 b a b^-1 a^-1", "B*A*B^-1*A^-1", True)
    assert out["verdict"] == "nontrivial"
    assert out["witness"] == ["B*A*B^-1*A^-1", "A^3*B*A*B^-1*A^2"]


def test_eval_surface():
    from commensurators.words import surface_group, words_equal
    S = surface_group()
    out = cmd_eval("Surface2", "letters_surface", "b b^-1 a", "C", True)
    # no normal form in the surface group: equal only up to the relator
    assert words_equal(S, S.word(out["image"]), S.word("A*C*A^-1"))
    assert out["verdict"] == "nontrivial"


def test_eval_errors(capsys, tmp_path):
    assert run(capsys, "eval", "F2", "letters_free", "z", "B")[0] == 2
    assert run(capsys, "eval", "F2", "letters_free", "a", "B^")[0] == 2
    assert run(capsys, "eval", "F3", "letters_free", "a", "B")[0] == 2
    assert run(capsys, "eval", "Surface2", "letters_free", "a", "B")[0] == 2
    assert run(capsys, "eval", "F2", str(tmp_path / "none.json"), "a", "B")[0] == 2
    # psi is only defined on K1
    code, _, err = run(capsys, "eval", "F2", "letters_free", "b", "A")
    assert code == 1 and "step 1" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["eval", "F2"])
    assert e.value.code == 2


def test_reports_are_deterministic():
    for cmd in (cmd_free_demo, cmd_surface_demo, cmd_kernel_check):
        a, b = cmd(), cmd()
        assert json.dumps(strip_timing(a.to_json()), sort_keys=True) == \
            json.dumps(strip_timing(b.to_json()), sort_keys=True)
        assert a.render().rsplit("time:", 1)[0] == b.render().rsplit("time:", 1)[0]


def test_report_pass_logic():
    r = ScenarioReport("x")
    assert r.passed
    r.check("one", 1, 1, True)
    assert r.passed
    r.check("two", 1, 2, False)
    assert not r.passed
    assert r.to_json()["pass"] is False


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "commensurators.cli", "kernel-check"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("kernel-check: PASS")
