import json

import pytest

from twobridge.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr()


def test_examples(capsys):
    code, out = _run(capsys, "decide", "3/8", "1/6", "3/10")
    assert code == 0 and out.out.startswith("homotopic (") and "exceptional pair" in out.out
    code, out = _run(capsys, "sseq", "2/5")
    assert code == 0 and out.out.strip() == "(3,2,3,2)"
    code, _ = _run(capsys, "null", "2/5", "2/5")
    assert code == 0


@pytest.mark.parametrize("argv,code", [
    (["word", "2/5"], 0),
    (["tseq", "3/8"], 0),
    (["decompose", "5/17"], 0),
    (["intervals", "3/8"], 0),
    (["reduce", "3/8", "19/8"], 0),
    (["null", "3/8", "1/6"], 1),
    (["pieces", "2/5", "--max", "2"], 0),
    (["pieces", "2/5", "--word", "aba"], 1),
    (["sc-verify", "1/2"], 0),
    (["decide", "4/9", "1/5", "2/9"], 1),
    (["decide", "5/17", "1/5", "1/7"], 2),
    (["classify", "2/5", "2/7"], 0),
    (["search-diagram", "3/8", "1/6", "--faces", "2"], 0),
    (["word", "1/x"], 2),
    (["tseq", "1/3"], 2),
    (["check-cert", "/nonexistent.json"], 2),
    (["verify", "--suite", "nope"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(argv) == code


def test_json_and_certificates(tmp_path, capsys):
    out_dir = tmp_path / "certs"
    for argv in (["decide", "3/8", "3/4", "5/12"], ["decide", "2/5", "1/5", "2/7"], ["classify", "2/5", "1/5"],
                 ["search-diagram", "3/8", "1/6"]):
        run(argv + ["--certify", "--json", "--out", str(out_dir)])
        json.loads(capsys.readouterr().out)
    files = sorted(out_dir.glob("*.json"))
    assert len(files) >= 5
    for f in files:
        assert run(["check-cert", str(f)]) == 0, f.name
    capsys.readouterr()


def test_check_cert_rejects_tampering(tmp_path, capsys):
    out_dir = tmp_path / "c"
    run(["classify", "3/7", "2/7", "--certify", "--out", str(out_dir)])
    path = next(out_dir.glob("*.json"))
    data = json.loads(path.read_text())
    data["witness"]["certificate"]["end"] = "a"
    path.write_text(json.dumps(data))
    assert run(["check-cert", str(path)]) == 1
    capsys.readouterr()


def test_verify_writes_reports(tmp_path, capsys):
    assert run(["verify", "--suite", "sequences", "--suite", "identities", "--out", str(tmp_path)]) == 0
    data = json.loads((tmp_path / "results.json").read_text())
    assert [s["name"] for s in data["suites"]] == ["sequences", "identities"]
    assert "<testsuite" in (tmp_path / "junit.xml").read_text()
    capsys.readouterr()
