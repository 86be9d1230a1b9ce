import json
import subprocess
import sys

import pytest

from cubext import balls as B
from cubext import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_resolve_exterior(capsys):
    code, out = run(capsys, "resolve", "--input", "exterior", "--rmax", "6", "--tmax", "8")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines() if line and line[0].isdigit()]
    assert rows and all(r[0] == r[1] and r[3] == "1" for r in rows)
    assert out.startswith("# window")


def test_resolve_json(capsys):
    code, out = run(capsys, "resolve", "--input", "a1", "--rmax", "3", "--tmax", "8", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["window"]["t_max"] == 8


def test_hauptlemma_certificate(capsys, tmp_path):
    code, out = run(capsys, "hauptlemma", "--n", "2")
    assert code == 0 and "MEET" in out
    cert = tmp_path / "cert.txt"
    cert.write_text("\n".join(l for l in out.splitlines() if not l.startswith("#")) + "\n")
    code, _ = run(capsys, "hauptlemma", "--input", str(cert))
    assert code == 0
    lines = cert.read_text().splitlines()
    cert.write_text("\n".join(l for l in lines if not l.startswith("COMPLEMENT/X")) + "\n")
    code, out = run(capsys, "hauptlemma", "--input", str(cert))
    assert code == 1 and "FAIL" in out


def test_balls_search_and_make(capsys, tmp_path):
    code, out = run(capsys, "balls", "search", "--dim", "2", "--cells", "3")
    assert code == 0 and "\tTrue\t" in out
    code, out = run(capsys, "balls", "make", "--dim", "2", "--shape", "double")
    assert code == 0
    path = tmp_path / "ball.json"
    path.write_text(out.splitlines()[-1])
    code, _ = run(capsys, "balls", "validate", "--input", str(path))
    assert code == 0
    path.write_text(B.Ball(2, 1, ()).to_json())
    code, out = run(capsys, "balls", "validate", "--input", str(path))
    assert code == 1 and "boundary coverage" in out


def test_malformed_input(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{}")
    with pytest.raises(SystemExit):
        cli.main(["balls", "validate", "--input", str(path)])
    with pytest.raises(SystemExit):
        cli.main(["d2", "--input", str(path)])
    with pytest.raises(SystemExit):
        cli.main(["resolve", "--rmax", "0"])


def test_lift_reports(capsys):
    code, out = run(capsys, "lift", "--input", "a1", "--order", "2", "--rmax", "8", "--tmax", "14")
    assert code == 0 and "window=12" in out


def test_d2_and_dm(capsys):
    code, out = run(capsys, "d2", "--seed", "1")
    assert code == 0
    code, out = run(capsys, "dm", "--seed", "2", "--order", "3")
    assert code == 0 and "\n4\t" in out


def test_wcheck_and_axioms(capsys):
    assert run(capsys, "wcheck", "--rmax", "6", "--n", "4")[0] == 0
    code, out = run(capsys, "axioms", "--n", "25", "--seed", "1")
    assert code == 0
    code, out = run(capsys, "axioms", "--n", "25", "--seed", "1", "--corrupt")
    assert code == 1 and "FAIL" in out


def test_output_is_deterministic(tmp_path, monkeypatch):
    outs = []
    for threads in ("1", "3"):
        monkeypatch.setenv("CUBEXT_THREADS", threads)
        path = tmp_path / f"o{threads}.tsv"
        cli.main(["axioms", "--n", "50", "--seed", "4", "--out", str(path)])
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cubext.cli", "balls", "search", "--dim", "1",
                           "--cells", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "total" in proc.stdout


def test_saved_reports_round_trip(tmp_path):
    cert = tmp_path / "cert.txt"
    assert cli.main(["hauptlemma", "--n", "2", "--out", str(cert)]) == 0
    assert cli.main(["hauptlemma", "--input", str(cert)]) == 0
    ball = tmp_path / "ball.json"
    assert cli.main(["balls", "make", "--shape", "double", "--dim", "2", "--format", "json",
                 "--out", str(ball)]) == 0
    assert cli.main(["balls", "validate", "--input", str(ball)]) == 0


def test_unknown_algebra_exits():
    with pytest.raises(SystemExit):
        cli.main(["resolve", "--input", "no_such_algebra"])
