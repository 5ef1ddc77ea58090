import json
import re

import pytest

from eaqcc.cli import run

EXAMPLE = "gf4 n=4: 1W10|1101\n"


@pytest.fixture
def files(tmp_path):
    gf = tmp_path / "ex.gf4"
    gf.write_text(EXAMPLE)
    cmf = tmp_path / "ex.cm"
    code, out, err = run(["import", str(gf), "--out", str(cmf)])
    assert code == 0, err
    rep = tmp_path / "ex.rep"
    code, out, err = run(["construct", str(cmf), "--out", str(rep)])
    assert code == 0, err
    return tmp_path, gf, cmf, rep


def test_import_writes_reference_matrix(files):
    _, _, cmf, _ = files
    assert cmf.read_text() == "checkmatrix n=4 rows=2\nZ: 1+D,D,1,D ; X: 0,1,0,0\nZ: 0,1,0,0 ; X: 1+D,1+D,1,D\n"


def test_import_single_symbol_and_errors(tmp_path):
    f = tmp_path / "w.gf4"
    f.write_text("gf4 n=1: w\n")
    code, out, _ = run(["import", str(f)])
    assert code == 0 and "rows=2" in out
    f.write_text("gf4 n=1: q\n")
    code, out, err = run(["import", str(f)])
    assert code == 2 and "parse error" in err


def test_usage_errors(tmp_path):
    assert run(["frobnicate", "x"])[0] == 1
    assert run(["construct"])[0] == 1
    f = tmp_path / "a"
    f.write_text(EXAMPLE)
    assert run(["construct", str(f), "--window", "2"])[0] == 1
    assert run(["construct", str(tmp_path / "missing")])[0] == 1


def test_construct_report(files):
    _, _, _, rep = files
    text = rep.read_text()
    assert "params [[4,2;2]] s=2" in text
    assert "verdict: pass" in text
    assert "enhanced [[4,2:2;2]]" in text


def test_construct_all_z(tmp_path):
    f = tmp_path / "z.cm"
    f.write_text("checkmatrix n=3 rows=2\nZ: 1+D,1,0 ; X: 0,0,0\nZ: 0,D,1 ; X: 0,0,0\n")
    code, out, _ = run(["construct", str(f)])
    assert code == 0 and "params [[3,1;0]] s=0" in out


def test_construct_rank_failure_is_precondition(tmp_path):
    f = tmp_path / "bad.cm"
    f.write_text("checkmatrix n=2 rows=2\nZ: 1,D ; X: 0,1\nZ: D,D^2 ; X: 0,D\n")
    code, _, err = run(["construct", str(f)])
    assert code == 3 and "full rank" in err
    f.write_text("checkmatrix n=2 rows=2\nZ: 1,D ; X: 0,1\n")
    assert run(["construct", str(f)])[0] == 2


def test_verify_pass_and_determinism(files):
    tmp, _, cmf, rep = files
    code, out, _ = run(["verify", str(rep)])
    assert code == 0 and "verdict: pass" in out
    code2, out2, _ = run(["verify", str(rep)])
    assert out2 == out
    rep2 = tmp / "again.rep"
    run(["construct", str(cmf), "--out", str(rep2)])
    assert rep2.read_text() == rep.read_text()


def _edit_section(text, name, fn):
    pat = re.compile(r"(```" + name + r"\n)(.*?)(^```$)", re.S | re.M)
    return pat.sub(lambda m: m[1] + fn(m[2]) + m[3], text, count=1)


def test_verify_detects_deleted_gate(files):
    tmp, _, _, rep = files
    text = rep.read_text()
    text = _edit_section(text, "encoder", lambda body: "".join(body.splitlines(True)[1:]))
    bad = tmp / "tampered.rep"
    bad.write_text(text)
    code, out, _ = run(["verify", str(bad)])
    assert code == 4
    assert "check encoder_replay: FAIL" in out


def test_verify_detects_swapped_row(files):
    tmp, _, _, rep = files
    text = rep.read_text()

    def swap_row(body):
        lines = body.splitlines(True)
        m = re.match(r"Z: (.*) ; X: (.*)\n", lines[2])
        lines[2] = f"Z: {m[2]} ; X: {m[1]}\n"
        return "".join(lines)

    bad = tmp / "swapped.rep"
    bad.write_text(_edit_section(text, "full_stabilizer", swap_row))
    code, out, _ = run(["verify", str(bad)])
    assert code == 4
    assert "check commuting: FAIL" in out and "check oracle: FAIL" in out
    assert "anticommute rows" in out


def test_verify_garbage_is_parse_error(tmp_path):
    f = tmp_path / "junk"
    f.write_text("hello\n")
    assert run(["verify", str(f)])[0] == 2


def test_enhance(files):
    tmp, _, _, rep = files
    code, out, _ = run(["enhance", str(rep)])
    assert code == 0
    assert "enhanced [[4,2:2;2]]" in out and "teleport [[4,3;3]]" in out
    f = tmp / "s0.cm"
    f.write_text("checkmatrix n=2 rows=1\nZ: 0,1 ; X: 1+D,0\n")
    r0 = tmp / "s0.rep"
    run(["construct", str(f), "--out", str(r0)])
    code, _, err = run(["enhance", str(r0)])
    assert code == 3 and "no extra-entanglement rows" in err
    f.write_text("checkmatrix n=1 rows=1\nZ: 1 ; X: D\n")
    run(["construct", str(f), "--out", str(r0)])
    code, out, _ = run(["enhance", str(r0)])
    assert code == 0 and "enhanced [[1,0:1;1]]" in out and "teleport" not in out.split("note")[0]


def test_structured_roundtrip(files):
    tmp, _, cmf, _ = files
    js = tmp / "ex.json"
    code, _, _ = run(["construct", str(cmf), "--format", "structured", "--out", str(js)])
    assert code == 0
    doc = json.loads(js.read_text())
    assert doc["params"] == "params [[4,2;2]] s=2"
    code, out, _ = run(["verify", str(js), "--format", "structured"])
    assert code == 0 and json.loads(out)["ok"] is True


def test_reference_frame_flags(files):
    _, _, cmf, _ = files
    code, out, _ = run(["construct", str(cmf), "--bob-order", "1,0", "--e1-target", "D,0;1+D^-1+D^2,1+D^-2"])
    assert code == 0
    assert "Z: 0,0,D^-1,D^-2+1+D,0,0 ; X: 0,0,1,0,0,0" in out
