import json
import subprocess
import sys

import pytest

from dunkl_fueter.cli import UsageError, main, parse_args
from dunkl_fueter.errors import InputError
from dunkl_fueter.report import VerificationReport, emit_report, merge
from dunkl_fueter.suites import CaseSpec, enumerate_cases, run_suite

G = "a1:d=2:kappa=1/2,1"


def test_text_report_format():
    r = VerificationReport("demo", rand_seed=0)
    r.add("identity", True)
    r.add("other", False, "x1*e1", "note")
    text = emit_report(r).decode()
    assert text.splitlines() == [
        "CASE demo CHECK identity PASS residual=0",
        "CASE demo CHECK other FAIL residual=x1*e1  # note",
        "summary: {pass: 1, fail: 1}",
    ]


def test_json_report_keys_in_fixed_order():
    r = VerificationReport("demo", rand_seed=3)
    r.add("identity", True)
    doc = json.loads(emit_report(r, "json", 3))
    assert list(doc) == ["schema", "engine_version", "rand_seed", "cases", "summary"]
    assert list(doc["cases"][0]["checks"][0]) == ["case", "name", "status", "expect", "residual", "detail"]
    assert doc["summary"] == {"pass": 1, "fail": 0}


def test_merge_tags_cases():
    a = VerificationReport("a")
    a.add("x", True)
    b = VerificationReport("b")
    b.add("y", False)
    m = merge("all", [a, b])
    assert [e.case for e in m.entries] == ["a", "b"] and m.n_fail == 1


def test_case_spec_validation():
    with pytest.raises(InputError):
        CaseSpec("bogus", G)
    with pytest.raises(InputError):
        CaseSpec("fueter31", G, m=-1)


def test_parse_args():
    verb, args, spec = parse_args(["verify", "commute", "--group", "sd:d=3:kappa=1", "--count", "3"])
    assert verb == "verify" and spec.suite == "commute" and spec.count == 3
    with pytest.raises(UsageError):
        parse_args(["verify", "commute"])
    with pytest.raises(UsageError):
        parse_args(["verify", "nope", "--group", G])
    with pytest.raises(UsageError):
        parse_args(["basis", "--group", G])


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exit_zero_on_pass(capsys):
    code, out, _ = run(["verify", "commute", "--group", "sd:d=3:kappa=1", "--count", "3", "--degree", "4"], capsys)
    assert code == 0 and "summary: {pass: " in out and "fail: 0}" in out


def test_exit_two_on_parity(capsys):
    code, _, err = run(["verify", "fueter31", "--group", "bd:d=2:kappa=1,1/2"], capsys)
    assert code == 2 and "ParityViolation" in err


def test_parity_refusal_counts_as_pass_under_negative_control(capsys):
    code, out, _ = run(["verify", "fueter31", "--group", "bd:d=2:kappa=1,1/2", "--negative-control"], capsys)
    assert code == 0 and "mu is refused PASS" in out and "mu = 8" in out


def test_exit_two_on_usage_and_input(capsys):
    assert run(["verify", "bogus"], capsys)[0] == 2
    assert run(["fischer", "--group", G, "--poly", "x1 + x2^2"], capsys)[0] == 2
    assert run(["fischer", "--group", G, "--poly", "x1 x2"], capsys)[0] == 2
    assert run(["verify", "fueter31", "--group", G, "--seed", "zbar^2*z^1", "--m", "1"], capsys)[0] == 2
    assert run(["verify", "commute", "--group", "e8:d=8:kappa=1"], capsys)[0] == 2
    assert run(["verify", "commute", "--group", G, "--degree", "9"], capsys)[0] == 2


def test_exit_one_on_failed_negative_family(capsys):
    # seeds too short to survive the Laplacians: the control cannot find a counterexample
    code, out, _ = run(["verify", "fueter31", "--group", G, "--negative-control", "--max-degree", "3", "--m", "0", "--n", "0"], capsys)
    assert code == 1 and "FAIL" in out


def test_exit_three_on_internal_error(capsys, monkeypatch):
    from dunkl_fueter import errors

    def boom(spec):
        raise errors.NonDivisible("remainder left over")

    monkeypatch.setattr("dunkl_fueter.cli.run_suite", boom)
    code, _, err = run(["verify", "commute", "--group", G], capsys)
    assert code == 3 and "NonDivisible" in err


def test_fischer_cli(capsys):
    code, out, _ = run(["fischer", "--group", "a1:d=2:kappa=0,0", "--poly", "x1^2"], capsys)
    assert code == 0
    assert out.splitlines() == [
        "M_2 (x^0 factor): 1/4*x1^2 - 1/4*x2^2 - 1/2*x1*x2*e12",
        "M_1 (x^1 factor): -1/4*x1*e1 + 1/4*x2*e2",
        "M_0 (x^2 factor): -1/2",
    ]


def test_ck_and_basis_cli(capsys):
    code, out, _ = run(["ck", "--group", "a1:d=1:kappa=1", "--poly", "x1", "--json"], capsys)
    assert code == 0 and json.loads(out)["ck"] == "1*x1 - 3*x0*e1"
    code, out, _ = run(["basis", "--group", "a1:d=2:kappa=1/2,1", "--n", "1"], capsys)
    assert code == 0 and "dimension 4" in out
    assert run(["list-groups"], capsys)[0] == 0


def test_enumerate_is_deterministic():
    spec = CaseSpec("fueter31", G)
    assert enumerate_cases(spec) == enumerate_cases(spec)


def test_reports_identical_across_jobs():
    a = emit_report(run_suite(CaseSpec("gamma", G, json=True, count=4, jobs=1)), "json", 0)
    b = emit_report(run_suite(CaseSpec("gamma", G, json=True, count=4, jobs=2)), "json", 0)
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dunkl_fueter", "list-groups"], capture_output=True, text=True)
    assert proc.returncode == 0 and "a1:d=" in proc.stdout
