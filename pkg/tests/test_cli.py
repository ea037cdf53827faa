import csv
import io
import json

import pytest

from stabkit.cli import EXIT_CHECKS, EXIT_IO, EXIT_OK, EXIT_USAGE, main, parse_character


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_char_builtin(capsys):
    code, out, _ = run(capsys, "char", "--char", "C0")
    assert code == EXIT_OK
    assert "truncated character at beta = -5/4: (8, -2, 1/4)" in out
    assert "v = (-1/4, 1/32)" in out
    assert "Delta_C0 = 0" in out


def test_char_json_and_float(capsys):
    code, out, _ = run(capsys, "char", "--char", '{"basis": "clifford", "coeffs": [0, 1, -3, 1]}', "--json")
    js = json.loads(out)
    assert code == EXIT_OK and js["kappabar"] == [1, 0]
    _, out, _ = run(capsys, "char", "--char", "C0", "--float")
    assert "1/4 [0.25]" in out
    assert "8 [" not in out


def test_character_sources(tmp_path):
    assert parse_character("psi_P_Pi").lattice.coeffs == (1, -4, 4, -1)
    assert parse_character('{"basis": "clifford", "coeffs": [0, 1, -3, 1]}').ch.coeffs[:3] == (-8, 8, -5)
    assert parse_character('{"ch": ["8", "-12", "12", "-9"]}').lattice.coeffs == (0, 1, 0, 0)
    f = tmp_path / "c.json"
    f.write_text('{"name": "K_Pi"}')
    assert parse_character(f"@{f}").lattice.coeffs == (1, -1)


def test_pair(capsys):
    code, out, _ = run(capsys, "pair", "--basis", "clifford3")
    assert code == EXIT_OK and "det = 1 (unimodular)" in out
    _, out, _ = run(capsys, "pair", "--basis", "clifford2", "--json")
    js = json.loads(out)
    assert js["matrix"] == [["2", "3", "6"], ["3", "2", "3"], ["6", "3", "2"]]
    assert js["det"] == "8"
    _, out, _ = run(capsys, "pair", "--basis", "kappabar", "--json")
    assert json.loads(out)["matrix"] == [["-1", "-1"], ["0", "-1"]]


def test_walls_vertical(capsys, tmp_path):
    prefix = str(tmp_path / "w")
    code, out, _ = run(capsys, "walls", "--char", "psi_P_Pi", "--bound", "5", "--out", prefix)
    assert code == EXIT_OK
    assert "1 wall(s): alpha^2 = 1/16" in out
    rows = list(csv.DictReader(io.StringIO((tmp_path / "w.csv").read_text())))
    assert len(rows) == 4
    assert {r["alpha_sq"] for r in rows} == {"1/16"}
    js = json.loads((tmp_path / "w.json").read_text())
    assert js["mode"] == "vertical" and len(js["rows"]) == 4


def test_walls_window_and_svg(capsys, tmp_path):
    code, out, _ = run(capsys, "walls", "--char", "psi_P_Pi", "--window", "-1/2,1/2,0,1/32",
                       "--svg", str(tmp_path / "w.svg"), "--json")
    js = json.loads(out)
    assert code == EXIT_OK
    assert js["walls"][0]["line"] == ["0", "1", "-1/32"]
    assert js["walls"][0]["segment"] == ["-1/4", "1/4"]
    assert "wall 0 xi + 1 eta + -1/32 = 0" in (tmp_path / "w.svg").read_text()


def test_negative_values_after_flags(capsys):
    code, out, _ = run(capsys, "tilt", "--char", "C1", "--beta", "-5/4", "--alpha-sq", "1/100")
    assert code == EXIT_OK and "beta = -5/4" in out


def test_walls_empty_for_c1(capsys):
    code, out, _ = run(capsys, "walls", "--char", "C1", "--bound", "3")
    assert code == EXIT_OK and "0 wall(s)" in out


def test_plot(capsys, tmp_path):
    code, out, _ = run(capsys, "plot", "hexagon")
    assert code == EXIT_OK and out.startswith("<?xml")
    target = tmp_path / "x.svg"
    code, _, _ = run(capsys, "plot", "xieta", "--points", "C0,C1", "--ray", "ell0",
                     "--walls-of", "psi_P_Pi", "--out", str(target))
    text = target.read_text()
    assert code == EXIT_OK and "C0 (-1/4, 1/32)" in text and "ell0" in text


def test_pick(capsys):
    code, out, _ = run(capsys, "pick", "2", "1")
    assert code == EXIT_OK
    assert "leaf (1,0) norm 1 kappa2-orbit" in out
    assert "leaf (1,1) norm 3 kappa1+kappa2-orbit" in out
    code, _, err = run(capsys, "pick", "2", "0")
    assert code == EXIT_USAGE and "not primitive (gcd 2)" in err


def test_tilt_and_serre(capsys):
    code, out, _ = run(capsys, "tilt", "--char", "C1", "--alpha-sq", "1/100")
    assert code == EXIT_OK and "in V: True" in out
    code, out, _ = run(capsys, "serre", "--json")
    js = json.loads(out)
    assert code == EXIT_OK and js["gepner"] is True
    assert js["jump_fraction"] == "1/3" and js["jump_branch"] == 1


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--out", str(tmp_path / "v.json"))
    assert code == EXIT_OK
    js = json.loads((tmp_path / "v.json").read_text())
    assert js["failures"] == 0
    assert set(js["checks"][0]) == {"id", "desc", "expected", "computed", "pass"}


def test_verify_failure_exit(capsys, monkeypatch):
    from stabkit import chow
    real = chow.todd

    def bad(X):
        t = real(X)
        return t + chow.ChernVector(X, [0] * X.dim + [1]) if X == chow.Y5 else t

    monkeypatch.setattr(chow, "todd", bad)
    code, out, _ = run(capsys, "verify")
    assert code == EXIT_CHECKS and "FAIL" in out


@pytest.mark.parametrize("argv", [
    ["char", "--char", "nonsense"],
    ["char", "--char", "{bad json"],
    ["tilt", "--char", "C0", "--alpha-sq", "-1"],
    ["walls", "--char", "kappa1"],
    ["walls", "--char", "C0", "--window", "1,2"],
    ["plot", "xieta", "--ray", "sideways"],
    ["pair", "--basis", "nope"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_io_errors(capsys, tmp_path):
    missing = tmp_path / "no" / "such"
    assert run(capsys, "char", "--char", f"@{missing}")[0] == EXIT_IO
    assert run(capsys, "plot", "hexagon", "--out", str(missing / "h.svg"))[0] == EXIT_IO
    assert run(capsys, "pair", "--basis", "clifford3", "--config", str(missing))[0] == EXIT_IO


def test_config_precedence(capsys, tmp_path):
    cfg = tmp_path / "stabkit.cfg"
    cfg.write_text("bound = 1\nalpha_sq = 1/50\n")
    _, out, _ = run(capsys, "walls", "--char", "psi_P_Pi", "--config", str(cfg))
    assert "bound 1" in out and out.count("sub (") == 2
    _, out, _ = run(capsys, "walls", "--char", "psi_P_Pi", "--config", str(cfg), "--bound", "5")
    assert "bound 5" in out and out.count("sub (") == 4
    _, out, _ = run(capsys, "tilt", "--char", "C0", "--config", str(cfg))
    assert "alpha^2 = 1/50" in out
    bad = tmp_path / "bad.cfg"
    bad.write_text("[oops\n")
    assert run(capsys, "tilt", "--char", "C0", "--config", str(bad))[0] == EXIT_USAGE


def test_outputs_are_deterministic(capsys, tmp_path, monkeypatch):
    outs = []
    for threads in ("1", "8"):
        monkeypatch.setenv("STABKIT_THREADS", threads)
        for rep in range(2):
            p = tmp_path / f"{threads}_{rep}"
            run(capsys, "walls", "--char", "psi_P_Pi", "--window", "-1/2,1/2,0,1/32", "--out", str(p),
                "--svg", str(p) + ".svg")
            outs.append(tuple((tmp_path / f"{threads}_{rep}{ext}").read_bytes()
                              for ext in (".csv", ".json", ".svg")))
    assert len(set(outs)) == 1
