import json
import subprocess
import sys

import pytest

from conftest import DATA
from toricpoly.cli import main


def run(*args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "toricpoly", *map(str, args)],
        input=stdin, capture_output=True, text=True,
    )


def test_classify_json():
    r = run("classify", DATA / "octahedron.poly", "--format", "json")
    assert r.returncode == 0 and r.stderr == ""
    data = json.loads(r.stdout)
    assert data["command"] == "classify"
    assert data["summary"]["singular"] == 6


def test_text_is_default(capsys):
    assert main(["classify", str(DATA / "square.poly")]) == 0
    out = capsys.readouterr().out
    assert "summary: smooth 4, orbifold 0, singular 0" in out


def test_validate_exit_codes(capsys):
    assert main(["validate", str(DATA / "cube.poly")]) == 0
    assert main(["validate", str(DATA / "octahedron_x_interval.poly")]) == 1
    assert "not simple" in capsys.readouterr().err


def test_domain_errors_exit_1(capsys):
    assert main(["classify", str(DATA / "empty.poly")]) == 1
    assert "EmptyPolytope" in capsys.readouterr().err
    assert main(["cut", str(DATA / "square.poly"), "--normal", "1,0", "--level", "2",
                 "--keep", "ge"]) == 1
    assert main(["desingularize", str(DATA / "octahedron.poly"), "--epsilon", "1"]) == 1
    assert main(["validate", str(DATA / "empty.poly")]) == 1
    assert main(["cut", str(DATA / "square.poly"), "--normal", "1,1", "--level", "3",
                 "--keep", "ge"]) == 1
    assert "EmptyCut" in capsys.readouterr().err


def test_usage_errors_exit_2(tmp_path, capsys):
    assert main([]) == 2
    assert main(["classify", str(tmp_path / "missing.poly")]) == 2
    bad = tmp_path / "bad.poly"
    bad.write_text("dim 2\nfacet 1 ; 1\n")
    assert main(["classify", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["cut", str(DATA / "square.poly"), "--normal", "1,0,0", "--level", "1",
                 "--keep", "ge"]) == 2
    assert main(["link", str(DATA / "square.poly"), "--vertex", "9"]) == 2
    assert main(["cut", str(DATA / "square.poly"), "--normal", "1,x", "--level", "1",
                 "--keep", "ge"]) == 2


def test_cut_warning_goes_to_stderr():
    r = run("cut", DATA / "square.poly", "--normal", "1,1", "--level", "5", "--keep", "le")
    assert r.returncode == 0
    assert "warning" in r.stderr and "warning" not in r.stdout


def test_non_primitive_warning_on_stderr():
    r = run("classify", "-", stdin="dim 1\nfacet 2 ; 2\nfacet -1 ; 0\n")
    assert r.returncode == 0
    assert "not primitive" in r.stderr


def test_output_file(tmp_path):
    out = tmp_path / "r.json"
    assert main(["delzant", str(DATA / "simplex.poly"), "--format", "json",
                 "--output", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["group"]["kernel_basis"] == [[1, 1, 1]]


@pytest.mark.parametrize(
    "args",
    [
        ("desingularize", DATA / "octahedron.poly"),
        ("link", DATA / "octahedron.poly", "--vertex", "5"),
        ("delzant", DATA / "wp112.poly"),
        ("cut", DATA / "cube.poly", "--normal", "1,1,1", "--level", "1", "--keep", "ge"),
    ],
)
def test_output_is_byte_identical_across_runs(args):
    for fmt in ("json", "text"):
        a = run(*args, "--format", fmt)
        b = run(*args, "--format", fmt)
        assert a.returncode == 0
        assert a.stdout == b.stdout


def test_desingularize_output_reparses(tmp_path):
    r = run("desingularize", DATA / "octahedron.poly", "--format", "json")
    r2 = run("classify", "-", "--format", "json", stdin=r.stdout)
    assert r2.returncode == 0
    data = json.loads(r2.stdout)
    assert data["summary"]["singular"] == 0
    assert len(data["vertices"]) == 24
