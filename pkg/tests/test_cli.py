import subprocess
import sys

import pytest

from subcad.cli import main
from subcad.render import parse_records

EC = "[x^2+y^2-1, [x*y-1/4, x^3-y^2]]"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    assert run(capsys, "full", "x^2+y^2-1", "--order", "[y,x]") == (0, "13\n", "")
    assert run(capsys, "vcad", EC, "--order", "[x,y]")[1] == "28\n"
    assert run(capsys, "eccad", EC, "--order", "[x,y]")[1] == "73\n"
    assert run(capsys, "lvcad", EC, "--order", "[x,y]", "--layers", "3")[1] == "28\n"


def test_count_matches_records(capsys):
    for argv in (("lcad", "x^2+y^2-1", "--order", "[y,x]", "--layers", "2"),
                 ("vcad", EC, "--order", "[x,y]")):
        _, count, _ = run(capsys, *argv)
        _, text, _ = run(capsys, *argv, "--output", "records")
        cells, summary = parse_records(text)
        assert int(count) == len(cells) == summary["count"]


def test_piecewise(capsys):
    code, out, _ = run(capsys, "lcad", "x^2+y^2-1", "--order", "[y,x]", "--layers", "1",
                       "--output", "piecewise")
    assert code == 0 and out.count("branch=truncated") == 4


def test_input_file(tmp_path, capsys):
    path = tmp_path / "problem.txt"
    path.write_text(EC + "\n")
    assert run(capsys, "vcad", "--file", str(path), "--order", "[x,y]")[1] == "28\n"


def test_collins(capsys):
    code, out, _ = run(capsys, "full", "x^2+y^2-1", "--order", "[y,x]", "--method", "collins")
    assert code == 0 and int(out) >= 13


def test_dist_with_figure(tmp_path, capsys):
    fig = tmp_path / "d.png"
    code, out, _ = run(capsys, "dist", "x^2+y^2-1", "--order", "[y,x]", "--figure", str(fig))
    assert code == 0
    assert out == "2\t5\n1\t6\n0\t2\n"
    assert fig.read_bytes()[:4] == b"\x89PNG"


def test_dist_layered(capsys):
    out = run(capsys, "dist", "x^2+y^2-1", "--order", "[y,x]", "--layers", "1")[1]
    assert out == "2\t5\n1\t0\n0\t0\n"


def test_warning_and_failure(capsys):
    args = ("full", "a*e+b*d+c*e+d+e", "--order", "[a,b,c,d,e]")
    code, out, err = run(capsys, *args)
    assert code == 0 and out == "241\n"
    assert "Warning: The input is not well-oriented" in err and "[1, 2, 2]" in err
    code, out, err = run(capsys, *args, "--failure", "err")
    assert code == 3 and out == "" and err.startswith("FAIL:")
    code, out, err = run(capsys, "lcad", "a*e+b*d+c*e+d+e", "--order", "[a,b,c,d,e]",
                         "--layers", "2", "--failure", "err")
    assert (code, out, err) == (0, "148\n", "")


@pytest.mark.parametrize("argv", [
    ("full", "x^2+", "--order", "[y,x]"),
    ("full", "x+z", "--order", "[y,x]"),
    ("vcad", "[x, y]", "--order", "[y,x]"),
    ("lcad", "x", "--order", "[y,x]"),
    ("full", "--order", "[y,x]"),
    ("full", "--file", "/nonexistent/input", "--order", "[y,x]"),
])
def test_bad_input(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_ec_precondition_exit_code(capsys):
    code, _, err = run(capsys, "vcad", "[x*(y-1), [y]]", "--order", "[y,x]")
    assert code == 4 and "main variable" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "subcad.cli", "full", "x^2-1", "--order", "[x]"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "5\n"
