import json
import subprocess
import sys

from ddesolver.cli import EXIT_BUDGET, EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED, main
from ddesolver.parser import parse_poly
from ddesolver.poly import divides, squarefree_part

TZ = ("t", "z0")
CUBIC = parse_poly("81*t^2*z0^3-81*t^2*z0^2+27*t^2*z0+18*t*z0^2-3*t^2-66*t*z0+47*t+z0-1", TZ)
QUAD = parse_poly("16*t*z0^2 - 8*t*z0 + t - 16", TZ)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_default_prints_product(capsys):
    code, out, _ = run(capsys, "solve", "3constellations.dde")
    assert code == EXIT_OK
    R = parse_poly(out.strip(), TZ)
    assert divides(QUAD, R) and divides(CUBIC, R)
    assert R.degree("t") == 3 and R.degree("z0") == 5


def test_solve_geometry_with_z0(capsys):
    code, out, _ = run(capsys, "solve", "--input", "3constellations.dde", "--algorithm", "geometry", "--variable", "z0", "--format", "json")
    assert code == EXIT_OK
    rec = json.loads(out)
    assert rec["algorithm"] == "geometry"
    R = parse_poly(rec["R"], TZ)
    assert divides(CUBIC, squarefree_part(R, "z0"))


def test_solve_is_deterministic(capsys):
    first = run(capsys, "solve", "3constellations.dde", "--algorithm", "hybrid", "--format", "json")
    second = run(capsys, "solve", "3constellations.dde", "--algorithm", "hybrid", "--format", "json")
    assert first == second
    assert json.loads(first[1])["certified_order"] == 31


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "solve", "missing.dde")[0] == EXIT_PARSE
    bad = tmp_path / "bad.dde"
    bad.write_text("k = two\n")
    assert run(capsys, "solve", str(bad))[0] == EXIT_PARSE
    assert run(capsys, "solve", "3tamari.dde", "--algorithm", "geometry")[0] == EXIT_UNSUPPORTED
    assert run(capsys, "solve", "3constellations.dde", "--max-primes", "1")[0] == EXIT_BUDGET
    assert run(capsys, "frobnicate")[0] == EXIT_PARSE


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "3constellations.dde", "--order", "6")
    assert code == EXIT_OK and out.split() == ["1", "1", "6", "54", "594", "7371", "99144"]
    code, out, _ = run(capsys, "expand", "3constellations.dde", "--order", "0")
    assert out.split() == ["1"]
    code, out, _ = run(capsys, "expand", "3constellations.dde", "--order", "3", "--deriv", "1", "--format", "json")
    assert json.loads(out)[0] == "0"


def test_expand_output_feeds_guess(capsys, tmp_path):
    _, out, _ = run(capsys, "expand", "3constellations.dde", "--order", "40", "--format", "json")
    f = tmp_path / "series.json"
    f.write_text(out)
    code, out, _ = run(capsys, "guess", "--series", str(f), "--bt", "3", "--bz0", "5", "--format", "json")
    rec = json.loads(out)
    assert code == EXIT_OK and parse_poly(rec["R"], TZ) == CUBIC and rec["certified_order"] == 31
    lines = tmp_path / "series.txt"
    lines.write_text("\n".join(json.loads(f.read_text())))
    assert run(capsys, "guess", "--series", str(lines), "--bt", "3", "--bz0", "5")[1].strip() == str(CUBIC)


def test_check(capsys, tmp_path):
    f = tmp_path / "R.txt"
    f.write_text(str(CUBIC))
    code, out, _ = run(capsys, "check", "3constellations.dde", "--annihilator", str(f), "--order", "31")
    assert code == EXIT_OK and out.strip() == "31"
    f.write_text("1")
    assert run(capsys, "check", "3constellations.dde", "--annihilator", str(f), "--order", "10")[1].strip() == "0"
    f.write_text("0")
    assert run(capsys, "check", "3constellations.dde", "--annihilator", str(f), "--order", "10")[0] == EXIT_PARSE


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "ddesolver", "expand", "3constellations.dde", "--order", "2"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.split() == ["1", "1", "6"]
