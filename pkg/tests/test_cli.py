import io
import json
import subprocess
import sys

import pytest

from osc.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def without_elapsed(text):
    data = json.loads(text)
    data.pop("elapsed_ms", None)
    return data


def test_verify_lex():
    code, out, _ = call("verify", "--machine", "lex-alt", "--max-len", "9")
    assert code == 0
    assert "0 mismatches" in out


def test_verify_json():
    code, out, _ = call("verify", "--machine", "noteq-nd", "--max-len", "6", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["mismatches"] == 0 and data["words_checked"] == 1093


def test_qtable_json():
    code, out, _ = call("qtable", "--lang", "reverse-membership", "--order", "2",
                        "--probe-depth", "9", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["command"] == "qtable" and data["distinct_rows"] >= 16
    assert set(data) == {"command", "language", "order", "probe_depth", "distinct_rows",
                         "distinct_cols", "query_count", "elapsed_ms"}


def test_qtable_csv_header():
    code, out, _ = call("qtable", "--lang", "primes", "--order", "3", "--probe-depth", "6",
                        "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "n,m,distinct_rows,distinct_cols"
    assert out.splitlines()[1].startswith("3,6,")


def test_qtable_parallel_identical():
    base = ["qtable", "--lang", "lexicographic", "--order", "3", "--probe-depth", "7",
            "--format", "json", "--keep-profiles"]
    _, one, _ = call(*base, "--parallel", "1")
    _, eight, _ = call(*base, "--parallel", "8")
    assert without_elapsed(one) == without_elapsed(eight)


def test_states_csv_is_byte_identical():
    argv = ["states", "--machine", "counteq3-det", "--max-len", "5", "--format", "csv"]
    first, second = call(*argv), call(*argv)
    assert first == second
    lines = first[1].splitlines()
    assert lines[0] == "n,states"
    assert lines[1:] == ["0,1", "1,4", "2,10", "3,19", "4,31", "5,46"]


@pytest.mark.parametrize("argv", [
    ["list", "--format", "json"],
    ["quotients", "--lang", "maj2", "--order", "4", "--probe-depth", "4", "--format", "json"],
    ["separate", "--lang", "primes", "--u", "1", "--v", "11", "--max-len", "6", "--format", "json"],
    ["primes", "witness", "--u", "11", "--bound", "10000", "--format", "json"],
    ["demo", "expalt", "--n", "2", "--format", "json"],
])
def test_json_outputs_are_deterministic(argv):
    first, second = call(*argv), call(*argv)
    assert first[0] == 0
    assert without_elapsed(first[1]) == without_elapsed(second[1])
    assert first[1] == second[1]


def test_primes_isolated():
    code, out, _ = call("primes", "isolated", "--residue", "3", "--modulus", "8", "--radius", "4",
                        "--bound", "10000", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert (data["k"], data["p"], data["window"], data["verified"]) == (26, 211, [207, 215], True)


def test_primes_witness_text():
    code, out, _ = call("primes", "witness", "--u", "11", "--bound", "10000")
    assert code == 0 and "w=001011" in out and "k=52" in out


def test_primes_constellation():
    code, out, _ = call("primes", "constellation", "--n", "3", "--set", "3,5", "--bound", "100",
                        "--format", "json")
    assert code == 0 and json.loads(out)["k"] == 1
    code, _, err = call("primes", "constellation", "--n", "3", "--set", "1,3,5,7", "--bound", "100")
    assert code == 2 and "prime 3" in err


def test_demo_hierarchy_text():
    code, out, _ = call("demo", "hierarchy", "--ell", "2", "--n", "2")
    assert code == 0 and "distinct profiles on test columns: 16" in out


def test_separate_none_found():
    code, out, _ = call("separate", "--lang", "maj2", "--u", "ab", "--v", "ba", "--max-len", "3")
    assert code == 0 and "no separating word" in out


@pytest.mark.parametrize("argv, expected", [
    (["verify", "--machine", "nope", "--max-len", "3"], 2),
    (["qtable", "--lang", "nope", "--order", "1", "--probe-depth", "1"], 2),
    (["qtable", "--lang", "primes", "--order", "-1", "--probe-depth", "1"], 2),
    (["frobnicate"], 2),
    (["qtable", "--lang", "lexicographic", "--order", "3", "--probe-depth", "8",
      "--budget", "1000"], 3),
    (["separate", "--lang", "primes", "--u", "1" * 70, "--v", "1", "--max-len", "1"], 3),
    (["primes", "witness", "--u", "01", "--bound", "10"], 2),
    (["demo", "hierarchy", "--ell", "2", "--n", "3"], 2),
])
def test_exit_codes(argv, expected):
    code, _, _ = call(*argv)
    assert code == expected


def test_refusal_states_required_budget():
    code, _, err = call("qtable", "--lang", "lexicographic", "--order", "3", "--probe-depth", "8",
                        "--budget", "1000")
    assert code == 3 and "needs 393640" in err


def test_budget_env(monkeypatch):
    monkeypatch.setenv("OSC_BUDGET", "50")
    code, _, _ = call("qtable", "--lang", "maj2", "--order", "3", "--probe-depth", "3")
    assert code == 3
    code, _, _ = call("qtable", "--lang", "maj2", "--order", "3", "--probe-depth", "3",
                      "--budget", "1000")
    assert code == 0


def test_verify_reports_refutation(monkeypatch):
    import osc.constructions as c

    good = c.det_maj2
    monkeypatch.setattr(c, "det_maj2", lambda: good().__class__(
        "bad", good().alphabet, good().init, good().delta, lambda q: True))
    code, out, _ = call("verify", "--machine", "maj2-det", "--max-len", "3", "--trace")
    assert code == 1
    assert "value:" in out


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "osc.cli", "list"], capture_output=True,
                         text=True, check=True)
    assert "hierarchy-alt:<l>" in out.stdout
