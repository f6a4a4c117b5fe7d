import json

import pytest

from iserre import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert cli.parse_range("-2:1") == [-2, -1, 0, 1]
    assert cli.parse_range("3") == [3]
    assert cli.parse_range("-3") == [-3]
    assert cli.parse_range("1,-4,2") == [1, -4, 2]
    with pytest.raises(cli.UsageError):
        cli.parse_range("2:1")
    with pytest.raises(cli.UsageError):
        cli.parse_range("a:b")


def test_identity_t_small_grid(capsys):
    code, out, _ = run(capsys, "identity", "t", "--w", "-2:2", "--u", "0:2", "--l", "0:2")
    assert code == 0
    assert out.strip().endswith("identity: 40/40 passed")


def test_identity_t_empty_grid_is_usage_error(capsys):
    code, _, err = run(capsys, "identity", "t", "--w", "0:0", "--u", "0:0", "--l", "0:0")
    assert code == 2
    assert "u + l >= 1" in err


def test_mutated_T_fails_with_witness(capsys, monkeypatch):
    monkeypatch.setenv(cli.MUTATE_ENV, "1")
    code, out, _ = run(capsys, "--format", "json", "identity", "t", "--w", "0:1", "--u", "1", "--l", "1")
    assert code == 1
    doc = json.loads(out)
    bad = [r for r in doc["rows"] if not r["pass"]]
    assert bad and all(r["witness"] not in (None, "0") for r in bad)


def test_unknown_flag_and_command(capsys):
    assert run(capsys, "identity", "t", "--nope", "1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "recursion", "--rule", "Gzz")[0] == 2


def test_global_options_after_the_command(capsys):
    a = run(capsys, "--format", "json", "--seed", "5", "recursion", "--rule", "Gk", "--samples", "3")
    b = run(capsys, "recursion", "--rule", "Gk", "--samples", "3", "--seed", "5", "--format", "json")
    assert a[0] == b[0] == 0
    assert a[1] == b[1]


def test_json_is_deterministic_and_versioned(capsys):
    argv = ["--format", "json", "--seed", "3", "recursion", "--samples", "4"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    doc = json.loads(first)
    assert doc["schema"] == 1
    assert doc["command"] == "recursion"
    assert doc["config"]["seed"] == 3
    assert doc["summary"]["failed"] == 0
    assert all(r["millis"] is None for r in doc["rows"])


def test_timings_flag_fills_millis(capsys):
    code, out, _ = run(capsys, "--format", "json", "--timings", "convert", "--a12", "-1")
    assert code == 0
    assert all(isinstance(r["millis"], float) for r in json.loads(out)["rows"])


def test_threads_give_the_same_report(capsys):
    argv = ["--format", "json", "identity", "t", "--w", "-1:1", "--u", "0:2", "--l", "0:2"]
    one = run(capsys, *argv)[1]
    many = run(capsys, "--threads", "2", *argv)[1]
    assert one == many


def test_iserre_and_bridge(capsys):
    assert run(capsys, "iserre", "--a12", "-3", "--case", "OE")[0] == 0
    assert run(capsys, "iserre", "--a12", "-2", "--lam", "-1:1")[0] == 0
    assert run(capsys, "bridge", "--a12", "-2:-1")[0] == 0
    assert run(capsys, "iserre", "--a12", "-2", "--case", "OE")[0] == 2


def test_small_commands(capsys):
    assert run(capsys, "proof", "replay", "--args", "0,1,1,0,0,0")[0] == 0
    assert run(capsys, "proof", "replay", "--args", "0,1,0,0,0,0")[0] == 2
    assert run(capsys, "idp", "--m", "0:3", "--parity", "1", "--compare")[0] == 0
    assert run(capsys, "convert", "--a12", "-2")[0] == 0
    assert run(capsys, "parity", "--a12", "-3:0")[0] == 0
    assert run(capsys, "rescale", "--a12", "-2")[0] == 0
    assert run(capsys, "varpi", "--a12", "-1", "--max-power", "2")[0] == 0
    assert run(capsys, "confluence", "--a12", "-1", "--samples", "10")[0] == 0
    assert run(capsys, "identity", "g", "--w", "-1:1", "--u", "0:1", "--l", "1")[0] == 0
    assert run(capsys, "identity", "h", "--w", "-2:2", "--u", "0:2", "--p1", "-1:1")[0] == 0


def test_present_bar_q1_with_config(capsys, tmp_path):
    cfg = tmp_path / "a2.cfg"
    cfg.write_text("# quasi-split A2\ncartan = 2,-1;-1,2\ntau = 2,1\nsigma = s, q*s\nbar.s = s\n")
    code, out, _ = run(capsys, "present", str(cfg))
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert "K(h1-h2)" in doc["presentation"]["generators"]
    assert run(capsys, "bar", str(cfg))[0] == 0
    assert run(capsys, "--config", str(cfg), "bar")[0] == 0
    code, out, _ = run(capsys, "--format", "json", "q1", str(cfg))
    assert code == 0
    assert json.loads(out)["specialized"]


def test_config_errors(capsys, tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("cartan = 2,-1;-2,2\n")
    assert run(capsys, "bar", str(bad))[0] == 2
    worse = tmp_path / "worse.cfg"
    worse.write_text("this line has no equals sign\n")
    assert run(capsys, "present", str(worse))[0] == 2
    assert run(capsys, "present", str(tmp_path / "missing.cfg"))[0] == 2
    violating = tmp_path / "viol.cfg"
    violating.write_text("a12 = -1\nbar.s = q^4*s\n")
    assert run(capsys, "bar", str(violating))[0] == 2
    # with the conditions switched off the same declaration is a failed claim
    violating.write_text("a12 = -1\nbar.s = q^4*s\nenforce_conditions = false\n")
    code, out, _ = run(capsys, "bar", str(violating))
    assert code == 1
    assert "witness" in out


def test_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "--format", "json", "--output", str(target), "convert", "--a12", "-1")
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["summary"]["passed"] == 1
