import io
import json
import os
import re
import subprocess
import sys

import pytest

from knotcert.cli import EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_OK, WORKERS_ENV, InputError, main, parse_range

TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_parse_range():
    assert parse_range("-5..5") == range(-5, 6)
    assert parse_range("3") == range(3, 4)
    assert parse_range("2..1") == range(0)
    with pytest.raises(InputError):
        parse_range("a..b")


def test_invariants_on_trefoil():
    code, text = run("invariants", "--pd", TREFOIL, "--format", "json")
    assert code == EXIT_OK
    data = json.loads(text)
    assert data["alexander"] == {"agree": True, "skein": "t^-1 - 1 + t", "state_sum": "t^-1 - 1 + t", "states": 3}
    assert data["jones"]["derivatives_t"] == [1, 0, -6, 54]
    assert data["thickness"]["bound"] == 0


def test_invariants_on_kt21():
    code, text = run("invariants", "--family", "kt:2,1", "--format", "json")
    data = json.loads(text)
    assert code == EXIT_OK
    assert data["alexander"]["state_sum"] == "1" and data["alexander"]["agree"]
    assert data["jones"]["derivatives_q"] == [1, 0, 0, 576]


def test_invariants_on_unknot():
    code, text = run("invariants", "--pd", "U", "--format", "json")
    data = json.loads(text)
    assert code == EXIT_OK
    assert data["jones"]["q"] == "1" and data["alexander"]["states"] == 1
    assert data["thickness"]["bound"] == 0 and data["diagram"]["crossings"] == 0


def test_human_and_json_carry_the_same_numbers():
    _, human = run("invariants", "--pd", TREFOIL)
    _, js = run("invariants", "--pd", TREFOIL, "--format", "json")

    def numbers(s):
        return sorted(re.findall(r"-?\d+", s))

    assert numbers(human) == numbers(js)


def test_invariants_from_file(tmp_path):
    f = tmp_path / "k.pd"
    f.write_text(TREFOIL + "\n", encoding="utf-8")
    code, text = run("invariants", "--file", str(f), "--format", "csv")
    assert code == EXIT_OK
    assert "alexander.states,3" in text


def test_states_formats():
    code, text = run("states", "--pd", TREFOIL, "--format", "csv")
    assert code == EXIT_OK
    lines = text.strip().splitlines()
    assert lines[0].split(",")[:4] == ["state", "M", "A", "delta"] and len(lines) == 4
    code, text = run("states", "--pd", TREFOIL, "--mark", "3")
    assert code == EXIT_OK and "states: 3" in text


@pytest.mark.parametrize("argv", [
    ["invariants"],
    ["invariants", "--pd", TREFOIL, "--family", "kt:2,1"],
    ["invariants", "--pd", "X[1,4,2,5] Y"],
    ["invariants", "--file", "/nonexistent/file.pd"],
    ["invariants", "--family", "torus:2,3"],
    ["invariants", "--pd", TREFOIL, "--cap", "0"],
    ["invariants", "--pd", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", "--cap", "2"],
    ["invariants", "--pd", TREFOIL, "--mark", "42"],
    ["verify-pcsc", "--family", "kt"],
    ["verify-pcsc", "--family", "pretzel:3,-2,2,-3"],
    ["verify-pcsc", "--family", "kt", "--r", "x..y", "--n", "1"],
    ["states", "--pd", "X[2,1,3,0] X[0,3,1,2]"],
    ["bogus"],
])
def test_input_errors_exit_2(argv):
    assert run(*argv)[0] == EXIT_INPUT


def test_parse_error_reports_position(capsys):
    assert main(["invariants", "--pd", "X[1,4,2,5] Y[3,6,4,1]"], out=io.StringIO()) == EXIT_INPUT
    assert "line 1, column 12" in capsys.readouterr().err


def test_verify_pcsc_negative_ranges_and_summary():
    code, text = run("verify-pcsc", "--family", "kt", "--r", "-3..3", "--n", "-1..1", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(text)
    assert data["summary"]["total"] == 21 and data["summary"]["verdicts"]["INCONCLUSIVE"] == 0


def test_verify_pcsc_single_trivial_point():
    code, text = run("verify-pcsc", "--family", "kt:2,0")
    assert code == EXIT_OK
    assert "TRIVIAL_KNOT" in text


def test_verify_pcsc_csv():
    code, text = run("verify-pcsc", "--family", "conway", "--r", "2..3", "--n", "1..2", "--format", "csv")
    assert code == EXIT_OK
    rows = text.strip().splitlines()
    assert rows[0] == "family,r,n,verdict,criterion,th_bound,B_D,genus,V2_at_1,V3_at_1"
    assert all(",Hanselman," in row for row in rows[1:])


def test_workers_env_and_flag_give_identical_output(monkeypatch):
    argv = ["verify-pcsc", "--family", "kt", "--r", "1..3", "--n", "-1..1", "--format", "json"]
    _, serial = run(*argv, "--workers", "1")
    monkeypatch.setenv(WORKERS_ENV, "2")
    code, parallel = run(*argv)
    assert code == EXIT_OK and parallel == serial
    monkeypatch.setenv(WORKERS_ENV, "many")
    assert run(*argv)[0] == EXIT_INPUT


def test_skein_check():
    code, text = run("skein-check", "--family", "kt", "--n", "1..2", "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(text)["rows"]
    assert [r["n"] for r in rows] == [1, 2]
    assert all(v for r in rows for v in r.values() if isinstance(v, bool))
    assert run("skein-check", "--family", "pretzel")[0] == EXIT_INPUT


def test_exit_status_constants():
    assert (EXIT_OK, EXIT_INCONCLUSIVE, EXIT_INPUT) == (0, 1, 2)


def test_module_entry_point():
    env = dict(os.environ, PYTHONPATH=os.pathsep.join(p for p in sys.path if p))
    proc = subprocess.run([sys.executable, "-m", "knotcert", "verify-pcsc", "--family", "kt", "--r", "-5..5",
                           "--n", "-3..3", "--format", "csv"], capture_output=True, text=True, env=env, timeout=300)
    assert proc.returncode == 0, proc.stderr
    assert len(proc.stdout.strip().splitlines()) == 1 + 11 * 7
