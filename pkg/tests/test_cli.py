import csv
import io
import json
import subprocess
import sys
from fractions import Fraction


from hessedyn.cli import fmt_complex, main, parse_map, parse_point
from hessedyn.exactnum import EPS
from hessedyn.maps import CAYLEYAN
from hessedyn.ratmap import INF, ProjPoint


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_point():
    assert parse_point("inf") == INF
    assert parse_point("-1/2") == ProjPoint(1, Fraction(-1, 2))
    assert parse_point("-eps/2") == ProjPoint(1, -EPS / 2)
    assert parse_point("1/4 - eps/2") == ProjPoint(1, Fraction(1, 4) - EPS / 2)
    assert parse_point("0.5-2i").to_complex() == complex(0.5, -2)


def test_parse_map():
    assert parse_map("c") == CAYLEYAN and parse_map("cayleyan") == CAYLEYAN
    assert parse_map("hc").degree == 9


def test_complex_format():
    assert fmt_complex(complex(0.1, -2)) == "0.10000000000000001-2i"
    assert fmt_complex(complex(float("inf"), 0)) == "inf"


def test_orbit_is_exact(capsys):
    code, out, _ = run(capsys, "orbit", "--map", "c", "--start", "0", "--steps", "3")
    assert code == 0
    assert [r["point"] for r in rows(out)] == ["0", "inf", "inf", "inf"]


def test_orbit_of_two_cycle(capsys):
    code, out, _ = run(capsys, "orbit", "--map", "c", "--start=-eps/2", "--steps", "2")
    pts = [r["point"] for r in rows(out)]
    assert code == 0 and pts[0] == pts[2] != pts[1]


def test_periodic(capsys):
    code, out, _ = run(capsys, "periodic", "--map", "c", "--n", "1")
    table = rows(out)
    assert code == 0 and len(table) == 4
    assert table[0]["point"] == "inf" and table[0]["class"] == "Superattracting"
    assert list(table[0]) == ["period", "point", "multiplier", "class", "is_real"]


def test_words_table(capsys, tmp_path):
    path = tmp_path / "w.csv"
    code, _, _ = run(capsys, "words", "--max-len", "3", "--out", str(path))
    table = rows(path.read_text())
    assert code == 0 and len(table) == 14
    hc = next(r for r in table if r["word"] == "hc")
    assert hc["degree"] == "9" and hc["order_at_inf"] == "2" and hc["measured_leading"] == "9/2"
    assert all(r["collision"] == "false" for r in table)


def test_words_bound_is_a_resource_error(capsys):
    code, _, _ = run(capsys, "words", "--max-len", "9")
    assert code == 2


def test_verify_writes_records(capsys, tmp_path):
    path = tmp_path / "v.jsonl"
    code, _, err = run(capsys, "verify", "--suite", "identities", "--suite", "real-degree",
                       "--out", str(path))
    recs = [json.loads(line) for line in path.read_text().splitlines()]
    assert code == 0 and len(recs) == 9
    assert all(r["status"] == "pass" and r["anchor"] for r in recs)
    assert "9/9" in err


def test_verify_failure_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--suite", "basin-bounds", "--out", str(tmp_path / "b"))
    assert code == 1 and "outer-1+sqrt3/2" in err


def test_bad_input(capsys):
    assert run(capsys, "orbit", "--map", "q", "--start", "0")[0] == 3
    assert run(capsys, "orbit", "--map", "c", "--start", "abc")[0] == 3
    assert run(capsys, "verify", "--suite", "nope")[0] == 3
    assert run(capsys, "render", "--map", "c", "--width", "0")[0] == 3
    assert run(capsys, "nonsense")[0] == 3
    assert run(capsys, "--seed", "-1", "julia", "--map", "h")[0] == 3


def test_budget_exhaustion(capsys):
    code, _, _ = run(capsys, "--budget-seconds", "0.2", "verify", "--suite", "h-periodic")
    assert code == 2


def _render(capsys, path, *extra):
    return run(capsys, "render", "--map", "c", "--width", "64", "--height", "48",
               "--out", str(path), *extra)


def test_render_ppm(capsys, tmp_path):
    path = tmp_path / "c.ppm"
    code, _, err = _render(capsys, path)
    data = path.read_bytes()
    assert code == 0 and data.startswith(b"P6\n")
    lines = data.split(b"\n")
    size = next(l for l in lines if l and not l.startswith(b"#") and l != b"P6")
    assert size == b"64 48"
    assert len(data) - data.index(b"\n255\n") - 5 == 64 * 48 * 3
    assert "unresolved: 0 pixels" in err and err.count("attractor") == 3


def test_render_is_deterministic_across_threads(capsys, tmp_path):
    a, b = tmp_path / "a.ppm", tmp_path / "b.ppm"
    _render(capsys, a, "--threads", "1")
    _render(capsys, b, "--threads", "4")
    assert a.read_bytes() == b.read_bytes()


def test_render_unresolved_pixels_are_counted(capsys, tmp_path):
    code, _, err = _render(capsys, tmp_path / "u.ppm", "--max-iter", "1")
    assert code == 0 and "unresolved: 0 pixels" not in err


def test_julia_is_seeded(capsys):
    a = run(capsys, "--seed", "9", "julia", "--map", "h", "--samples", "50")[1]
    b = run(capsys, "julia", "--map", "h", "--samples", "50", "--seed", "9")[1]
    assert a == b and len(rows(a)) == 50


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "hessedyn.cli", "orbit", "--map", "h",
                           "--start", "1", "--steps", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.splitlines()[-1] == "1,-1/2"


def test_periodic_cayleyan_census(capsys):
    code, out, _ = run(capsys, "periodic", "--map", "c", "--n", "2")
    table = rows(out)
    assert code == 0 and len(table) == 10
    assert sum(r["period"] == "2" for r in table) == 6


def test_words_row_for_c(capsys):
    table = rows(run(capsys, "words", "--max-len", "1")[1])
    c = next(r for r in table if r["word"] == "c")
    assert (c["degree"], c["order_at_inf"], c["measured_leading"]) == ("3", "2", "-3/2")


def test_render_far_field_is_the_basin_of_infinity():
    import numpy as np
    from hessedyn.cli import RenderConfig, render, render_grid
    cfg = RenderConfig("c", width=120, height=120, window=(-4.0, 4.0, -4.0, 4.0))
    _, labels, cycles = render(cfg)
    assert cycles[0][0].is_inf() and len(cycles) == 3
    v = render_grid(cfg) + 0.5
    far = np.abs(v) > 2.73
    assert far.any() and (labels[far] == 0).all()
    # the whole picture is resolved and every basin shows up
    assert set(np.unique(labels)) == {0, 1, 2}
