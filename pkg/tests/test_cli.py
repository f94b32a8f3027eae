import json
import subprocess
import sys

import pytest

from bigmcg.cli import main
from bigmcg.suites import steps_for


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_suite_lemma1_passes(capsys):
    code, out, _ = run(capsys, "suite", "--name", "lemma1", "--ends", "4", "--window", "10")
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL", "UNKNOWN"))]
    assert code == 0 and lines and all(l.startswith("PASS") for l in lines)
    anchors = {s.anchor for s in steps_for("lemma1", 4, 10)}
    assert all(any(a in l for a in anchors) for l in lines)


def test_equal_tau_product(capsys):
    code, out, _ = run(capsys, "equal", "--ends", "3", "--w1", "tau1*tau2", "--w2", "h[1,2]", "--window", "12")
    assert code == 0 and "Verified" in out


def test_metric_demo(capsys):
    code, out, _ = run(capsys, "metric", "--demo", "gn", "--N", "5", "--depth", "20")
    assert code == 0
    assert "PASS cauchy-forward" in out and "FAIL cauchy-inverse" in out


def test_refuted_and_usage_exit_codes(capsys):
    assert run(capsys, "trivial", "--word", "h[1,2]")[0] == 1
    code, _, err = run(capsys, "equal", "--w1", "T[q,1,1]", "--w2", "R")
    assert code == 2 and "position" in err
    code, _, err = run(capsys, "frobnicate")
    assert code == 2 and err
    code, _, err = run(capsys, "suite", "--name", "nonsense")
    assert code == 2 and err


def test_unknown_only_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("BIGMCG_MAX_BUDGET", "1")
    code, out, _ = run(capsys, "equal", "--w1", "T[a,1,1]*T[b,1,1]*T[a,1,1]",
                       "--w2", "T[b,1,1]*T[a,1,1]*T[b,1,1]", "--window", "6")
    assert code == 3 and "Unknown" in out


def test_json_output(capsys):
    code, out, _ = run(capsys, "flux", "--word", "h[1,2]", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["seed"] == 0 and any("-1 1 0" in l for l in data["lines"])


@pytest.mark.parametrize("argv", [
    ["classify", "2,1,0", "--against", "2,0,1"],
    ["classify", "3,0,0", "--truncate", "2"],
    ["endspace", "Flute", "--against", "omega:p>p+finite:p"],
    ["eval", "--word", "h[1,2]", "--vector", "beta[1,2]"],
    ["eval", "--word", "T[a,1,1]*T[b,1,1]", "--curve", "a[1,1]"],
    ["phi", "--word", "h[1,2]", "--end", "2"],
    ["witness", "--curve", "c[1,3]", "--shift", "h[1,2]"],
    ["stripmap", "--map", "twist", "--point", "0,0.5"],
    ["parse-check", "--random", "20", "--seed", "4"],
    ["suite", "--list"],
])
def test_commands_succeed_and_are_deterministic(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == 0 and first == second and first[1]


def test_console_entry_point_matches_main():
    argv = ["phi", "--word", "h[1,2]", "--end", "2", "--format", "json"]
    a = subprocess.run([sys.executable, "-m", "bigmcg", *argv], capture_output=True, text=True)
    b = subprocess.run([sys.executable, "-m", "bigmcg", *argv], capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout
