import json
import shutil
import subprocess

import pytest

from corpus import ring_text
from gradecheck.cli import main

QUARTIC = "ring GF(32003)[x,y]\nideal x^3*y - x*y^3\n"
SCHEMA = [
    "dim", "embdim", "mult", "hvector", "cm", "gorenstein", "hypersurface", "ci",
    "min_mult", "stretched", "super_stretched", "h_class", "obstruction", "seed", "options",
]


@pytest.fixture
def run(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("GRADECHECK_SEED", raising=False)

    def _run(text, *argv):
        f = tmp_path / "ring.txt"
        f.write_text(text)
        code = main([*argv, str(f)])
        out = capsys.readouterr()
        return code, out.out, out.err

    return _run


def no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(no_floats(v) for v in obj)
    return True


def test_report_quartic(run):
    code, out, _ = run(QUARTIC, "report", "--json")
    data = json.loads(out)
    assert code == 0 and list(data) == SCHEMA
    assert data["hvector"] == [1, 1, 1, 1]
    assert data["stretched"] is True and data["super_stretched"] is False
    assert data["obstruction"] == "not super-stretched"
    assert no_floats(data)


def test_report_cubic_and_free(run):
    data = json.loads(run("ring GF(32003)[x,y]\nideal x^3\n", "report", "--json")[1])
    assert data["hvector"] == [1, 1, 1] and data["super_stretched"] and data["h_class"] == "(1,n,1)"
    assert data["obstruction"] == "none_found"
    data = json.loads(run("ring QQ[x,y,z]\nideal\n", "report", "--json")[1])
    assert data["hvector"] == [1] and all(data[k] for k in ("cm", "gorenstein", "stretched", "super_stretched"))


def test_text_report_labels_verdicts(run):
    code, out, _ = run(QUARTIC, "report")
    assert code == 0
    assert "super_stretched: false" in out and "generic-sampled" in out
    assert "[stretched and J m^2 = m^3]" in out


def test_focused_commands(run):
    data = json.loads(run(QUARTIC, "ss-sop", "--sop", "(x+2*y)^2", "--json")[1])
    assert data["verdict"] is False and data["failing_degree"] == 3 and data["dims"]["3"] == 2
    data = json.loads(run(ring_text("x^2,y^2"), "hilbert", "--json")[1])
    assert data["numerator"] == [1, 2, 1] and data["dim"] == 1
    data = json.loads(run(QUARTIC, "identities", "--which", "frobenius", "--m", "2", "--json")[1])
    assert data["holds"] is True
    data = json.loads(run(QUARTIC, "reduction", "--j", "x+2*y", "--json")[1])
    assert data["is_reduction"] and data["reduction_number"] == 3
    for which in ("colon", "delta"):
        data = json.loads(run(ring_text("x^2,y^2"), "identities", "--which", which, "--json")[1])
        assert data["holds"] is True
    data = json.loads(run(QUARTIC, "family", "principal", "--json")[1])
    assert data["distinct_pairs"] == 10
    data = json.loads(run(ring_text("x^2,y^2"), "family", "onedim", "--json")[1])
    assert data["distinct_pairs"] == 10 and not data["vacuous"]
    code, out, _ = run(QUARTIC, "family", "ideal", "--sop", "(x+2*y)^2", "--y", "x^3", "--json")
    assert code == 0 and json.loads(out)["annihilation"] is True
    for cmd in ("hvector", "stretched", "ss"):
        code, out, _ = run(QUARTIC, cmd, "--json", "--audit")
        assert code == 0 and no_floats(json.loads(out))
        assert json.loads(out)["seed"] == 0


def test_exit_codes(run):
    code, _, err = run("ring QQ[x,y]\nideal x^2, x*y\n", "report", "--json")
    assert code == 2 and "Cohen-Macaulay" in err
    code, _, err = run("ideal x + 1\n", "report")
    assert code == 2 and "homogeneous" in err
    code, _, err = run("ring QQ[x]\nideal x^^2\n", "hilbert")
    assert code == 2 and "line 2" in err
    code, _, err = run(QUARTIC, "ss-sop", "--sop", "x")
    assert code == 2
    code, _, err = run(QUARTIC, "report", "--budget", "0")
    assert code == 1 and "budget" in err


def test_seed_env_override(run, monkeypatch):
    a = json.loads(run(QUARTIC, "report", "--json", "--seed", "5")[1])
    monkeypatch.setenv("GRADECHECK_SEED", "11")
    b = json.loads(run(QUARTIC, "report", "--json", "--seed", "5")[1])
    assert a["seed"] == 5 and b["seed"] == 11
    monkeypatch.setenv("GRADECHECK_SEED", "abc")
    assert run(QUARTIC, "report")[0] == 2


def test_stdin(monkeypatch, capsys):
    import io

    monkeypatch.delenv("GRADECHECK_SEED", raising=False)
    monkeypatch.setattr("sys.stdin", io.StringIO(QUARTIC))
    assert main(["hvector", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["hvector"] == [1, 1, 1, 1]


def test_console_script(tmp_path):
    exe = shutil.which("gradecheck")
    if exe is None:
        pytest.skip("console script not installed")
    f = tmp_path / "r.txt"
    f.write_text(QUARTIC)
    proc = subprocess.run([exe, "hilbert", str(f), "--json"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["numerator"] == [1, 1, 1, 1]
