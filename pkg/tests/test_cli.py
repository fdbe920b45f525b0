import json
import subprocess
import sys
from pathlib import Path

import pytest

from pairkit.cli import main
from pairkit.fitter import ROTATED_WRONG_SET, TRIANGULAR_SET_B, samples_for_values, write_samples
from pairkit.mappings import builtin, parse_rational, QuadForm

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name, argv", [
    ("cantor1_0_3", ["--map", "cantor1", "--xrange", "0:3", "--yrange", "0:3"]),
    ("saw5", ["--map", "saw(5)", "--xrange", "0:6", "--yrange", "0:4"]),
    ("triangle_y_brackets", ["--map", "triangle_y", "--xrange", "-4:4", "--yrange", "-2:3", "--brackets"]),
    ("rectangle_spiral", ["--map", "rectangle_spiral", "--xrange", "-2:2", "--yrange", "-2:2"]),
])
def test_render_golden(capsys, name, argv):
    code, out, _ = run(capsys, "render", *argv)
    assert code == 0
    assert out == (GOLDEN / f"{name}.txt").read_text()


def test_render_is_deterministic(capsys):
    argv = ["render", "--map", "square_spiral", "--xrange", "-5:5", "--yrange", "-5:5"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_render_grid_limit(capsys, monkeypatch):
    monkeypatch.setenv("PAIRKIT_MAX_GRID", "10")
    code, _, err = run(capsys, "render", "--map", "cantor1", "--xrange", "0:3", "--yrange", "0:3")
    assert code == 1 and json.loads(err)["error"] == "GridTooLarge"


def test_render_width(capsys):
    _, out, _ = run(capsys, "render", "--map", "cantor1", "--xrange", "0:1", "--yrange", "0:0", "--width", "4")
    assert out.splitlines()[0] == "0 |    0    2"


def test_eval_json_round_trip(capsys):
    code, out, _ = run(capsys, "eval", "--map", "cantor1", "--point", "1,2", "--json")
    d = json.loads(out)
    assert code == 0 and d["value"] == 7 and d["region"] == 0
    form = QuadForm(*[parse_rational(c) for c in d["form"]])
    assert form(1, 2) == 7
    assert form == builtin("cantor1").regions[0][1]


def test_eval_negative_point(capsys):
    code, out, _ = run(capsys, "eval", "--map", "square_spiral", "--point", "-1,-1")
    assert code == 0 and out.strip().endswith("6")


def test_eval_domain_error(capsys):
    code, _, err = run(capsys, "eval", "--map", "rectangle_spiral", "--point", "0,-1")
    assert code == 2 and json.loads(err)["error"] == "DomainError"


def test_invert(capsys):
    assert run(capsys, "invert", "--map", "cantor1", "--z", "7")[:2] == (0, "1,2\n")
    code, _, err = run(capsys, "invert", "--map", "cantor1", "--z", "-1")
    assert code == 2 and json.loads(err)["error"] == "NotInImage"


def test_usage_errors(capsys):
    assert run(capsys, "render", "--map", "cantor1", "--xrange", "zz")[0] == 1
    assert run(capsys, "bogus")[0] == 1
    code, _, err = run(capsys, "eval", "--map", "nope", "--point", "0,0")
    assert code == 1 and "error" in json.loads(err)


def test_fit_valid(capsys, tmp_path):
    pts = tmp_path / "pts.csv"
    pts.write_text(write_samples(samples_for_values("triangular", TRIANGULAR_SET_B)))
    out = tmp_path / "fit.json"
    code, text, _ = run(capsys, "fit", "--points", str(pts), "--reference", "triangular", "--out", str(out))
    assert code == 0 and text.startswith("VALID")
    assert json.loads(out.read_text())["validation"] == "valid"


def test_fit_singular(capsys, tmp_path):
    pts = tmp_path / "pts.csv"
    pts.write_text(write_samples(samples_for_values("cantor1_rot", ROTATED_WRONG_SET)))
    code, text, err = run(capsys, "fit", "--points", str(pts), "--reference", "cantor1_rot")
    assert code == 3 and text.startswith("SINGULAR")
    assert json.loads(err)["error"] == "SingularSystem"


def test_fit_unchecked_and_bad_file(capsys, tmp_path):
    pts = tmp_path / "pts.csv"
    pts.write_text(write_samples(samples_for_values("cantor1", range(6))))
    code, text, _ = run(capsys, "fit", "--points", str(pts))
    assert code == 0 and text.startswith("UNCHECKED")
    pts.write_text("0,0,0\n")
    assert run(capsys, "fit", "--points", str(pts))[0] == 1
    assert run(capsys, "fit", "--points", str(tmp_path / "missing.csv"))[0] == 1


def test_fit_3d(capsys, tmp_path):
    from refdata import TABLE2
    pts = tmp_path / "p3.csv"
    pts.write_text("".join(f"{x},{y},{z},{v}\n" for (x, y, z), v in TABLE2.items()))
    code, text, _ = run(capsys, "fit", "--points", str(pts))
    assert code == 0 and text.startswith("FITTED")


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--map", "square_spiral", "--count", "2000")
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, "verify", "--map", "square_spiral", "--count", "2000", "--corrupt", "2,4,1")
    assert code == 4 and out.startswith("FAIL")


def test_verify_p3d(capsys):
    assert run(capsys, "verify", "--map", "p3d", "--count", "500")[0] == 0


def test_enumerate(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--map", "cantor1", "--count", "3")
    assert code == 0 and out == "0,0,0\n0,1,1\n1,0,2\n"
    dest = tmp_path / "walk.csv"
    run(capsys, "enumerate", "--map", "square_spiral", "--count", "50", "--out", str(dest))
    assert len(dest.read_text().splitlines()) == 50
    assert run(capsys, "enumerate", "--map", "nope")[0] == 1


def test_dioph(capsys):
    code, out, _ = run(capsys, "dioph", "--z", "7", "--a", "2")
    d = json.loads(out)
    assert code == 0 and d["solutions"] == [] and "41" in d["explanation"][0]
    d = json.loads(run(capsys, "dioph", "--z", "5", "--eq", "triangular")[1])
    assert d["solutions"] == [[2, 2]]
    d = json.loads(run(capsys, "dioph", "--scan", "30", "--eq", "degraded")[1])
    assert d["ok"] is False
    assert run(capsys, "dioph")[0] == 1


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--order", "10", "--reads", "100")
    assert code == 0 and json.loads(out)["packed_slots"] == 55


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "pairkit.cli", "invert", "--map", "cantor1", "--z", "7"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "1,2\n"
