import csv
import io
import json
import math
import os
import subprocess


def run(cli, *args, env=None):
    return subprocess.run([cli, *args], capture_output=True, text=True, env=env)


def ok(cli, *args):
    p = run(cli, *args)
    assert p.returncode == 0, p.stderr
    return p.stdout


def check_steering_report(r):
    assert len(r["per_setting"]) == r["n"]
    assert abs(sum(r["per_setting"]) / r["n"] - r["s_value"]) <= 1e-12
    assert r["violated"] == (r["s_value"] > r["bound"] + 1e-12)


def test_bounds(cli):
    expected = {2: 1 / math.sqrt(2), 3: 1 / math.sqrt(3), 4: 1 / math.sqrt(3), 6: 0.5393, 10: 0.5236}
    for n, value in expected.items():
        b = json.loads(ok(cli, "bounds", "--n", str(n)))
        assert abs(b["value"] - value) <= 5e-5
        assert b["method"] == "brute_force"
        a = json.loads(ok(cli, "bounds", "--n", str(n), "--method", "analytic"))
        assert abs(a["value"] - b["value"]) <= 1e-10


def test_bounds_from_axes_file(cli, tmp_path):
    path = tmp_path / "axes.csv"
    path.write_text(ok(cli, "scheme", "--n", "6"))
    b = json.loads(ok(cli, "bounds", "--axes", str(path)))
    assert b["n"] == 6
    assert abs(b["value"] - 0.5393446629166317) <= 1e-12


def test_scheme_csv(cli):
    rows = list(csv.reader(io.StringIO(ok(cli, "scheme", "--n", "3"))))
    assert rows == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
    rows = list(csv.reader(io.StringIO(ok(cli, "scheme", "--n", "10"))))
    assert len(rows) == 10
    for r in rows:
        assert abs(math.hypot(*map(float, r)) - 1) <= 1e-13


def test_steer_and_cheat_reports_revalidate(cli):
    r = json.loads(ok(cli, "steer", "--mu", "0", "--n", "3"))
    assert r["s_value"] == 0 and r["violated"] is False
    check_steering_report(r)
    for n in (2, 3, 4, 6, 10):
        check_steering_report(json.loads(ok(cli, "steer", "--mu", "0.6", "--n", str(n))))
        for kind in ("vertex", "dual"):
            check_steering_report(json.loads(ok(cli, "cheat", "--n", str(n), "--kind", kind)))


def test_bell_and_state(cli):
    b = json.loads(ok(cli, "bell", "--mu", "0.6"))
    assert abs(b["b_value"] - 1.697056274847714) <= 1e-12
    assert b["violated"] is False and b["bell_local"] is True
    s = json.loads(ok(cli, "state", "--mu", "0.7", "--depolarize", "0.1"))
    assert abs(s["effective_mu"] - 0.63) <= 1e-15
    assert abs(s["tangle"] - ((3 * 0.63 - 1) / 2) ** 2) <= 1e-10
    assert s["regime"] == "steerable_n3"
    assert sorted(s["eigenvalues"]) == s["eigenvalues"]


def test_scan_flips_at_thresholds(cli):
    out = ok(cli, "scan", "--from", "0.4", "--to", "0.9", "--step", "0.05", "--n", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 11
    for r in rows:
        mu = float(r["mu"])
        assert (r["steering_violated"] == "true") == (mu > 1 / math.sqrt(3))
        assert (r["chsh_violated"] == "true") == (mu > 1 / math.sqrt(2))
    threaded = ok(cli, "scan", "--from", "0.4", "--to", "0.9", "--step", "0.05", "--n", "3", "--threads", "4")
    assert threaded == out


def test_seeded_runs_are_byte_identical(cli):
    args = ("mc", "--mu", "0.67", "--n", "3", "--shots", "2000", "--seed", "42", "--repeats", "2")
    first = ok(cli, *args)
    assert ok(cli, *args, "--threads", "2") == first
    bundle = json.loads(first)
    assert len(bundle["runs"]) == 2
    for run_ in bundle["runs"]:
        check_steering_report(run_["steering"])
    assert ok(cli, "tomo", "--mu", "0.7", "--seed", "1") == ok(cli, "tomo", "--mu", "0.7", "--seed", "1")


def test_missing_seed_is_reported(cli):
    p = run(cli, "tomo", "--mu", "0.7", "--resamples", "0")
    assert p.returncode == 0
    assert "--seed" in p.stderr


def test_tomo_output(cli):
    t = json.loads(ok(cli, "tomo", "--mu", "0.7", "--shots", "100000", "--seed", "3"))
    assert t["fidelity_to_target"] >= 0.995
    assert len(t["rho_hat"]) == 16
    trace = sum(t["rho_hat"][i * 5][0] for i in range(4))
    assert abs(trace - 1) <= 1e-12


def test_errors(cli):
    for args in (("bounds", "--n", "5"), ("steer", "--mu", "1.5", "--n", "3"), ("frobnicate",),
                 ("steer", "--mu", "0.5"), ("scan", "--n", "3", "--step", "0"), ("bounds", "--n", "3", "--bogus", "1")):
        p = run(cli, *args)
        assert p.returncode == 1, args
        err = json.loads(p.stderr.strip().splitlines()[-1])
        assert set(err) == {"error", "detail"}
        assert p.stdout == ""


def test_output_file_and_csv(cli, tmp_path):
    path = tmp_path / "bound.csv"
    assert ok(cli, "bounds", "--n", "3", "--format", "csv", "--output", str(path)) == ""
    rows = dict(csv.reader(io.StringIO(path.read_text())))
    assert abs(float(rows["value"]) - 1 / math.sqrt(3)) <= 1e-14


def test_locale_independent(cli):
    env = dict(os.environ, LC_ALL="de_DE.UTF-8", LANG="de_DE.UTF-8")
    p = run(cli, "scan", "--from", "0.5", "--to", "0.6", "--step", "0.1", "--n", "6", env=env)
    assert p.returncode == 0
    assert "0,5" not in p.stdout and "0.5" in p.stdout
