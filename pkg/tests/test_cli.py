import json
import subprocess
import sys

import pytest

from orthodec import certificate
from orthodec.cli import main
from orthodec.finring import Zm
from orthodec.odac import construct_so_even


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def construct_to(tmp_path, capsys, algebra, size, ring, name="c.json"):
    path = tmp_path / name
    code, out, _ = run(capsys, "construct", "--algebra", algebra, "--size", str(size), "--ring", ring, "--out", str(path))
    assert code == 0
    return path


def test_construct_sp4_Z5(tmp_path, capsys):
    path = construct_to(tmp_path, capsys, "sp", 4, "Z5")
    doc = json.loads(path.read_text())
    assert list(doc) == ["format_version", "ring", "algebra", "provenance", "components", "digest"]
    assert doc["format_version"] == "1"
    assert len(doc["components"]) == 5
    assert doc["provenance"]["tag"] == "sp-restricted"
    assert run(capsys, "verify", str(path))[0] == 0


def test_construct_stdout_matches_file(tmp_path, capsys):
    path = construct_to(tmp_path, capsys, "so", 4, "Z3")
    code, out, _ = run(capsys, "construct", "--algebra", "so", "--size", "4", "--ring", "Z3")
    assert code == 0 and out == path.read_text()


def test_construct_so7(tmp_path, capsys):
    doc = json.loads(construct_to(tmp_path, capsys, "so", 7, "Z3").read_text())
    assert len(doc["components"]) == 7
    assert all(len(c["generators"]) == 3 for c in doc["components"])


@pytest.mark.parametrize("argv,reason", [
    (["--algebra", "sl", "--size", "6", "--ring", "Z5"], "unsupported-size"),
    (["--algebra", "sp", "--size", "2", "--ring", "Z5"], "unsupported-size"),
    (["--algebra", "so", "--size", "2", "--ring", "Z5"], "unsupported-size"),
    (["--algebra", "sl", "--size", "4", "--ring", "Z2"], "even-characteristic"),
    (["--algebra", "so", "--size", "4", "--ring", "GF(2^2)"], "even-characteristic"),
    (["--algebra", "so", "--size", "4", "--ring", "Q5"], "bad-ring"),
])
def test_construct_errors(capsys, argv, reason):
    code, out, err = run(capsys, "construct", *argv)
    assert code == 2
    assert out == ""
    assert err.startswith(f"error: {reason}:")


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--algebra", "e8", "--size", "4", "--ring", "Z5"])
    assert exc.value.code == 2


def test_verify_zeroed_generator(tmp_path, capsys):
    path = construct_to(tmp_path, capsys, "sp", 4, "Z5")
    doc = json.loads(path.read_text())
    g = doc["components"][1]["generators"][0]
    g["entries"] = [["0"] * 4 for _ in range(4)]
    body = {k: v for k, v in doc.items() if k != "digest"}
    doc["digest"] = certificate.digest_of(body)
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1
    assert "SumNotSpanning(witness=" in out


def test_verify_not_in_algebra(tmp_path, capsys):
    path = construct_to(tmp_path, capsys, "so", 4, "Z3")
    doc = json.loads(path.read_text())
    doc["components"][0]["generators"][0]["entries"][0][0] = "1"
    doc["digest"] = certificate.digest_of({k: v for k, v in doc.items() if k != "digest"})
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1 and "NotInAlgebra(component=0, generator=0)" in out


@pytest.mark.parametrize("mangle", [
    lambda t: t[: len(t) // 2],
    lambda t: t.replace('"format_version": "1"', '"format_version": "2"'),
    lambda t: t.replace('"Z5"', '"Z7"', 1),
    lambda t: "[]",
    lambda t: t.replace('"rows": 4', '"rows": 3', 1),
])
def test_verify_malformed(tmp_path, capsys, mangle):
    path = construct_to(tmp_path, capsys, "sp", 4, "Z5")
    path.write_text(mangle(path.read_text()))
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2
    assert err.startswith("error: malformed-certificate:")


def test_verify_missing_file(tmp_path, capsys):
    assert run(capsys, "verify", str(tmp_path / "nope.json"))[0] == 2


def test_verify_closed_killing(tmp_path, capsys):
    path = construct_to(tmp_path, capsys, "so", 6, "Z5")
    assert run(capsys, "verify", str(path), "--killing", "closed")[0] == 0
    sl = construct_to(tmp_path, capsys, "sl", 4, "Z3", "sl.json")
    code, _, err = run(capsys, "verify", str(sl), "--killing", "closed")
    assert code == 2 and "unsupported-family" in err


def test_ring(capsys):
    code, out, _ = run(capsys, "ring", "Z6")
    assert code == 0 and "factors: Z2, Z3" in out and "char: 6" in out
    code, out, _ = run(capsys, "ring", "Z45")
    assert "factors: Z9, Z5" in out and "char: 45" in out
    code, out, _ = run(capsys, "ring", "GF(2^3)")
    assert "factors: GF(2^3)" in out and "char: 2" in out
    assert run(capsys, "ring", "Z1")[0] == 2


def test_check_sl(capsys):
    code, out, _ = run(capsys, "check-sl", "--n", "6", "--ring", "Z3")
    assert code == 1 and "witness" in out
    code, out, _ = run(capsys, "check-sl", "--n", "6", "--ring", "Z35")
    assert code == 0 and "necessary condition satisfied (existence not implied)" in out
    code, out, _ = run(capsys, "check-sl", "--n", "4", "--ring", "GF(2^2)")
    assert code == 1
    code, out, _ = run(capsys, "check-sl", "--n", "6", "--ring", "Z9")
    assert "3*I_6" in out


def test_enumq(capsys):
    code, out, _ = run(capsys, "enumq", "--m", "1")
    lines = out.splitlines()
    rows = [s for s in lines if s and s[0] in "01"]
    assert code == 0 and len(rows) == 10
    assert "|Q| = 10 = 2^1(2^2+1)" in lines
    assert "Q_alpha sizes: 0:2 1:2 2:2 3:2 inf:2  (expected 2 each)" in lines
    code, out, _ = run(capsys, "enumq", "--m", "0")
    assert len([s for s in out.splitlines() if s and s[0] in "01"]) == 3
    assert run(capsys, "enumq", "--m", "99")[0] == 2


def test_certificate_round_trip():
    D = construct_so_even(3, Zm(15))
    text = certificate.dumps(D)
    cert = certificate.loads(text)
    assert certificate.verify_certificate(cert).is_odac
    assert certificate.dumps(certificate.to_decomposition(cert)) == text
    assert "." not in json.dumps(json.loads(text)["components"])  # no floats anywhere


def test_console_script(tmp_path):
    out = tmp_path / "c.json"
    cmd = [sys.executable, "-m", "orthodec.cli", "construct", "--algebra", "so", "--size", "5", "--ring", "Z7",
           "--out", str(out)]
    assert subprocess.run(cmd, capture_output=True).returncode == 0
    res = subprocess.run([sys.executable, "-m", "orthodec.cli", "verify", str(out)], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("valid:")
