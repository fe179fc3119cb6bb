"""CLI commands, expression grammar, exit codes, cache persistence."""

import json
import subprocess
import sys

import pytest

from parahecke.engine import load_engine
from parahecke.errors import ExprSyntaxError
from parahecke.exprs import parse_hecke_expr, parse_lattice
from parahecke.ringcore import LaurentPoly
from parahecke import cli

Q = LaurentPoly.q()


@pytest.fixture(scope="module")
def E1():
    return load_engine("a1")


def run_cli(args, **kw):
    return cli.main(list(args))


def capture(capsys, args):
    code = cli.main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expression_grammar(E1):
    H, W = E1.hecke, E1.weyl
    assert parse_hecke_expr(H, "t[1]") == H.basis(W.elt([1]))
    assert parse_hecke_expr(H, "s1·s0") == H.basis(W.elt([-1]))
    assert parse_hecke_expr(H, "2·t[1] + q·s1 - 1") == (
        H.basis(W.elt([1])).scale(2) + H.basis(W.gen(1)).scale(Q) - H.one()
    )
    assert parse_hecke_expr(H, "q^-2·t[0]") == H.one().scale(LaurentPoly.q_power(-2))
    assert parse_hecke_expr(H, "3") == H.one().scale(3)
    assert parse_lattice(H, "t[-2]") == E1.datum.lattice([-2])
    with pytest.raises(ExprSyntaxError):
        parse_hecke_expr(H, "t[1] +")
    with pytest.raises(ExprSyntaxError):
        parse_hecke_expr(H, "sx")
    with pytest.raises(ExprSyntaxError):
        parse_lattice(H, "s1")


def test_multiply_matches_quadratic(capsys):
    code, out, _ = capture(capsys, ["--datum", "a1", "multiply", "s1", "s1"])
    assert code == 0
    obj = json.loads(out)
    assert obj["terms"] == [
        {"element": "t[0]·w[]", "coeff": [[2, 1]]},
        {"element": "t[0]·w[1]", "coeff": [[0, -1], [2, 1]]},
    ]


def test_theta_command_matches_star_expansion(capsys, E1):
    code, out, _ = capture(capsys, ["--datum", "a1", "theta", "t[1]"])
    assert code == 0
    obj = json.loads(out)
    inv, _star = E1.hecke.im_invert_basis(E1.weyl.elt([-1]))
    want = {t["element"]: t["coeff"] for t in inv.to_obj()}
    assert {t["element"]: t["coeff"] for t in obj["terms"]} == want


def test_invert_and_to_bernstein(capsys):
    code, out, _ = capture(capsys, ["--datum", "a1", "invert", "t[-1]"])
    assert code == 0
    obj = json.loads(out)
    assert obj["element"] == "t[-1]·w[]"
    assert len(obj["inverse"]["terms"]) == 4
    code, out, _ = capture(capsys, ["--datum", "a1", "to-bernstein", "t[0]·w[1]"])
    assert code == 0
    assert json.loads(out)["terms"] == [
        {"lattice": {"free": [0], "tors": []}, "finite_weyl": [1], "coeff": [[0, 1]]}
    ]


def test_center_basis_command(capsys):
    code, out, _ = capture(capsys, ["--datum", "a1", "center-basis", "--facet", "1", "--height", "1"])
    assert code == 0
    obj = json.loads(out)
    assert obj["facet"] == ["s1"]
    assert [rec["m"] for rec in obj["basis"]] == ["t[0]·w[]", "t[-1]·w[]"]


def test_satake_command_formats(capsys, tmp_path):
    code, out, _ = capture(capsys, ["--datum", "a1", "satake", "--height", "1"])
    assert code == 0
    obj = json.loads(out)
    assert obj["rows"][1]["entries"][1]["coeff"] == [[0, -1], [2, 1]]
    assert obj["rows"][1]["checks"] == {"diag_one": True, "positive": True, "triangular": True}
    code, out, _ = capture(capsys, ["--datum", "a1", "satake", "--height", "1", "--format", "csv", "--q", "4"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,m,coeff,coeff_at_q"
    assert lines[-1].endswith(",3")  # q - 1 at q = 4
    code, out, _ = capture(capsys, ["--datum", "a1", "satake", "--height", "1", "--q", "9"])
    assert code == 0
    row1 = json.loads(out)["rows"][1]
    assert [e["coeff_at_q"] for e in row1["entries"]] == [1, 8]
    out_file = tmp_path / "table.json"
    assert run_cli(["--datum", "a1", "satake", "--height", "1", "--out", str(out_file)]) == 0
    assert json.loads(out_file.read_text())["datum"] == "a1"


def test_satake_rejects_bad_q(capsys):
    code, _, err = capture(capsys, ["--datum", "a1", "satake", "--q", "6"])
    assert code == 2 and "prime power" in err


def test_csv_only_for_satake(capsys):
    code, _, err = capture(capsys, ["--datum", "a1", "multiply", "s1", "s1", "--format", "csv"])
    assert code == 2 and "satake" in err


def test_verify_command(capsys):
    code, out, _ = capture(capsys, ["--datum", "a1", "verify", "presentation"])
    assert code == 0
    assert all(line.startswith("[PASS]") for line in out.strip().splitlines())


def test_validate_command(capsys):
    code, out, _ = capture(capsys, ["--datum", "gl2", "validate"])
    assert code == 0
    obj = json.loads(out)
    assert obj["weyl_order"] == 2 and obj["omega_data"]["omega_free_rank"] == 1


def test_bad_datum_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "name": "bad", "free_rank": 1, "simple_coroots": [[1]], "simple_roots": [[3]],
        "finite_generators": [[[-1]]], "affine_parameters": {"s0": 1, "s1": 1},
        "component_highest_roots": [[3]],
    }))
    code, _, err = capture(capsys, ["--datum", str(bad), "verify", "presentation"])
    assert code == 2
    assert "NonCrystallographic" in err


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["--datum", "a1", "frobnicate"])
    assert exc.value.code == 2


def test_missing_command_exits_2(capsys):
    code, _, err = capture(capsys, ["--datum", "a1"])
    assert code == 2 and "command is required" in err


def test_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv("PARAHECKE_CACHE_DIR", str(tmp_path))
    env = {"PARAHECKE_CACHE_DIR": str(tmp_path)}
    cmd = [sys.executable, "-m", "parahecke", "--datum", "a1", "satake", "--height", "2"]
    first = subprocess.run(cmd, capture_output=True, text=True, env={**_base_env(), **env})
    assert first.returncode == 0
    cached = list(tmp_path.glob("parahecke-v*.json"))
    assert len(cached) == 1
    second = subprocess.run(cmd, capture_output=True, text=True, env={**_base_env(), **env})
    assert second.returncode == 0
    assert first.stdout == second.stdout


def _base_env():
    import os

    return dict(os.environ)


def test_pretty_format(capsys):
    code, out, _ = capture(capsys, ["--datum", "a1", "theta", "t[-1]", "--format", "pretty"])
    assert code == 0
    assert "i[t[-1]·w[]]" in out


def test_satake_height_2_row_set(capsys):
    code, out, _ = capture(capsys, ["--datum", "a1", "satake", "--height", "2"])
    assert code == 0
    obj = json.loads(out)
    assert [r["x"] for r in obj["rows"]] == ["t[0]·w[]", "t[-1]·w[]", "t[-2]·w[]"]


def test_satake_gl2_height_1_all_minuscule(capsys):
    code, out, _ = capture(capsys, ["--datum", "gl2", "satake", "--height", "1"])
    assert code == 0
    for row in json.loads(out)["rows"]:
        assert len(row["entries"]) == 1
        assert row["entries"][0]["coeff"] == [[0, 1]]


def test_corrupt_cache_ignored(tmp_path):
    eng = load_engine("a1")
    path = eng._cache_path(str(tmp_path))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("{not json")
    assert eng.load_cache(str(tmp_path)) is False
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"version": -1, "datum": "x"}, fh)
    assert eng.load_cache(str(tmp_path)) is False
    assert eng.save_cache(str(tmp_path)) is True
    assert eng.load_cache(str(tmp_path)) is True
