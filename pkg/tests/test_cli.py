import json
import subprocess
import sys

import pytest

from bgroup.cli import run
from bgroup.jsonio import decode_complex, decode_moebius
from bgroup.moebius import Moebius, psl_distance


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_triangle_three_cusps(capsys):
    code, out, _ = call(capsys, "triangle", "--sig", "0,3;inf,inf,inf", "--params", "inf,0,1")
    doc = json.loads(out)
    assert code == 0
    assert psl_distance(decode_moebius(doc["A"]), Moebius(1, 2, 0, 1)) < 1e-15
    assert doc["report"]["passed"]


def test_bounds_four_cusps(capsys):
    code, out, _ = call(capsys, "bounds", "--sig", "0,4;inf,inf,inf,inf")
    assert code == 0
    doc = json.loads(out)
    assert float(doc["y1"]) == 1.0 and float(doc["y2"]) == 0.5


def test_patterson_image(capsys):
    code, out, _ = call(capsys, "patterson", "--tau", "4i,4i,4i")
    doc = json.loads(out)
    assert code == 0
    assert [decode_complex(z) for z in doc["z"]] == [2j, 1 + 4j, 1 + 2j]
    assert len(doc["extended_genus2"]) == 5 and len(doc["zero_six"]) == 5
    assert all(float(m["residual"]) <= 1e-8 for m in doc["matches"])


def test_build_verify_roundtrip(capsys, tmp_path):
    code, out, _ = call(capsys, "build", "--sig", "2,0;", "--coords", "4i,4i,4i")
    assert code == 0
    path = tmp_path / "g.json"
    path.write_text(out)
    code, out, _ = call(capsys, "verify", "--in", str(path), "--probes")
    assert code == 0 and json.loads(out)["passed"]


def test_build_warns_on_stderr(capsys):
    code, out, err = call(capsys, "build", "--sig", "1,1;3", "--coords", "1.5i")
    assert code == 0 and "warning" in err
    assert json.loads(out)["warnings"]


def test_literal_conjugator_fails_verification(capsys, tmp_path):
    _, out, _ = call(capsys, "build", "--sig", "1,1;inf", "--coords", "3i", "--paper-literal")
    path = tmp_path / "g.json"
    path.write_text(out)
    code, out, _ = call(capsys, "verify", "--in", str(path))
    assert code == 3 and not json.loads(out)["passed"]


def test_plumb(capsys):
    code, out, _ = call(capsys, "plumb", "--sig", "0,4;inf,inf,inf,inf", "--coord", "2i")
    doc = json.loads(out)
    assert code == 0 and doc["certified"]
    assert float(doc["abs"]) < float(doc["bound"])


def test_validation_errors(capsys):
    assert call(capsys, "bounds", "--sig", "0,3;2,3,7")[0] == 2
    assert call(capsys, "build", "--sig", "0,4;inf,inf,inf,inf", "--coords", "1+i,2i")[0] == 2
    assert call(capsys, "patterson", "--tau", "4i,4i")[0] == 2
    assert call(capsys, "triangle", "--sig", "0,3;2,3,6")[0] == 2
    assert call(capsys, "build", "--sig", "0,4;inf,inf,inf,inf", "--coords", "0.3")[0] == 2
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_limitset_svg(capsys, tmp_path):
    _, out, _ = call(capsys, "build", "--sig", "0,4;inf,inf,inf,inf", "--coords", "3i")
    path = tmp_path / "g.json"
    path.write_text(out)
    svg = tmp_path / "g.svg"
    code, out, _ = call(capsys, "limitset", "--in", str(path), "--len", "4", "--svg", str(svg))
    assert code == 0 and json.loads(out)["count"] > 0
    text = svg.read_text()
    assert text.startswith("<svg") and 'r="0.5"' in text
    code, out, _ = call(capsys, "limitset", "--in", str(path), "--len", "3", "--svg", "-")
    assert out.startswith("<svg")


def test_output_deterministic():
    argv = [sys.executable, "-m", "bgroup.cli", "patterson", "--tau", "4i,3.5+2i,5i"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
