import io
import json
import subprocess
import sys

import pytest

from pptkit.cli import EXIT_CAPACITY, EXIT_OK, EXIT_POLE, EXIT_UNEXPECTED, EXIT_USAGE, SUITES, SuiteConfig, main, run_suite


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_verify_tl_exact():
    code, out, _ = run("verify", "--suite", "tl", "--d", "2,3,4", "--backend", "exact")
    assert code == EXIT_OK
    assert out.strip().endswith("3 checks, 3 as expected, 0 unexpected")


def test_verify_theorem1_marks_d3_failure_as_expected():
    code, out, _ = run("verify", "--suite", "theorem1", "--d", "3", "--format", "json")
    assert code == EXIT_OK
    reports = json.loads(out)["reports"]
    d3 = [r for r in reports if "d=3" in r["name"]]
    assert d3 and all(r["verdict"] == "fail" and r["expected"] == "fail" and r["as_expected"] for r in d3)


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "hecke"])
def test_every_suite_but_hecke_runs_clean(suite):
    code, out, _ = run("verify", "--suite", suite, "--samples", "5")
    assert code == EXIT_OK, out


def test_hecke_suite_reports_printed_relation_failure():
    code, out, _ = run("verify", "--suite", "hecke", "--format", "json")
    assert code == EXIT_UNEXPECTED
    bad = [r["name"] for r in json.loads(out)["reports"] if not r["as_expected"]]
    assert bad and all(name.startswith("hecke") and "corrected" not in name for name in bad)
    assert all("d=2" not in name for name in bad)


def test_float_backend_suite():
    code, out, _ = run("verify", "--suite", "brauer", "--backend", "float")
    assert code == EXIT_OK, out


def test_verify_json_is_deterministic():
    a = run("verify", "--suite", "all", "--seed", "1", "--format", "json")
    b = run("verify", "--suite", "all", "--seed", "1", "--format", "json")
    assert a[1] == b[1]
    payload = json.loads(a[1])
    assert set(payload) == {"tool_version", "seed", "reports"} and payload["seed"] == 1


def test_verify_usage_errors():
    assert run("verify", "--suite", "nope")[0] == EXIT_USAGE
    assert run("verify", "--suite", "tl", "--d", "1")[0] == EXIT_USAGE
    assert run("verify", "--suite", "tl", "--samples", "0")[0] == EXIT_USAGE
    assert run("verify", "--suite", "tl", "--d", "x")[0] == EXIT_USAGE
    assert run()[0] == EXIT_USAGE


def test_verify_capacity():
    assert run("verify", "--suite", "tl", "--d", "17")[0] == EXIT_CAPACITY


def test_suite_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig("tl", tol=0)
    outcomes = run_suite(SuiteConfig("tl", (2,)))
    assert len(outcomes) == 1 and outcomes[0].as_expected


@pytest.mark.parametrize(
    "args, want",
    [
        (["--link", "borromean", "--u", "1/3"], "8"),
        (["--word", "B2: s1 s1 s1", "--u", "1/3"], "2"),
        (["--word", "B2: s1 S1"], "4"),
        (["--link", "hopf", "--u", "1/3", "--sign", "-"], "5/2"),
    ],
)
def test_invariant(args, want):
    code, out, _ = run("invariant", *args, "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["invariant"] == want


def test_invariant_text_and_float():
    code, out, _ = run("invariant", "--link", "whitehead", "--u", "exp(i*pi/3)")
    assert code == EXIT_OK
    assert "invariant: 4" in out
    assert "writhe: 1" in out


def test_invariant_errors():
    code, _, err = run("invariant", "--word", "B3: s1 s3")
    assert code == EXIT_USAGE and "position" in err
    assert run("invariant", "--link", "hopf", "--u", "-1")[0] == EXIT_POLE
    assert run("invariant", "--link", "nonesuch")[0] == EXIT_USAGE
    assert run("invariant", "--link", "hopf", "--u", "abc")[0] == EXIT_USAGE


def test_diagram():
    code, out, _ = run("diagram", "n=3: E(1)*E(2)*E(1)")
    assert code == EXIT_OK and out.strip() == "n=3 loops=0 pairs=T1-T2,T3-B3,B1-B2"
    code, out, _ = run("diagram", "n=2: E(1)*E(1)")
    assert out.strip() == "n=2 loops=1 pairs=T1-T2,B1-B2"


def test_diagram_represent_json():
    from pptkit.operators import v_pi
    from pptkit.scalars import format_scalar

    code, out, _ = run("diagram", "n=3: V((12))*V((23))", "--represent", "2", "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(out)["matrix"]
    want = [[format_scalar(z) for z in row] for row in v_pi("(132)", 2).tolist()]
    assert rows == want


def test_diagram_errors():
    assert run("diagram", "n=3: E(5)")[0] == EXIT_USAGE
    assert run("diagram", "E(1)")[0] == EXIT_USAGE
    assert run("diagram", "n=7: I()", "--represent", "4")[0] == EXIT_CAPACITY


@pytest.mark.parametrize(
    "u, unitary, entangling",
    [("i", "yes", "yes"), ("0", "yes", "no"), ("0.5", "no", "yes")],
)
def test_gate(u, unitary, entangling):
    code, out, _ = run("gate", "--u", u, "--q", "1", "--sign", "+")
    assert code == EXIT_OK
    assert f"unitary: {unitary}" in out
    assert f"entangling: {entangling}" in out


def test_gate_json_and_errors():
    code, out, _ = run("gate", "--u", "i", "--format", "json")
    data = json.loads(out)["gate"]
    assert data["unitary"] and data["rho"] == "2" and "witness" in data
    assert run("gate", "--u", "1+")[0] == EXIT_USAGE
    assert run("gate", "--u", "1", "--q", "0")[0] == EXIT_POLE


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "pptkit.cli", "invariant", "--link", "trefoil"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "invariant: 2" in proc.stdout
