from __future__ import annotations

import json

import pytest

from nilstring.errors import ConfigError
from nilstring.verify import (
    Check,
    Report,
    VerifySuiteConfig,
    associativity_witness,
    render_report,
    run_verify_suite,
)


def test_config_validation():
    with pytest.raises(ConfigError):
        VerifySuiteConfig(suite="nope")
    with pytest.raises(ConfigError):
        VerifySuiteConfig(suite="theorem", node_budget=0)
    with pytest.raises(ConfigError):
        VerifySuiteConfig(suite="theorem", primes=(4,))


def test_empty_report_renders_minimal():
    assert render_report(Report(), "json") == b"{}\n"
    assert Report().passed


def test_status_aggregation():
    r = Report("x", checks=[Check("a", "a", "pass"), Check("b", "b", "budget")])
    assert r.status == "budget" and r.exit_code == 3
    r.checks.append(Check("c", "c", "fail", witness=[1]))
    assert r.status == "fail" and r.exit_code == 1


def test_p4_report_round_trip_and_determinism():
    cfg = VerifySuiteConfig(suite="p4-classification")
    r1 = run_verify_suite(cfg)
    r2 = run_verify_suite(cfg)
    assert r1.passed
    b1 = render_report(r1, "json")
    assert b1 == render_report(r2, "json")
    back = Report.from_dict(json.loads(b1))
    assert back == Report(r1.suite, r1.inputs, sorted(r1.checks, key=lambda c: c.name), {}, r1.version)
    assert render_report(back, "json") == b1


def test_text_report_center_chain():
    r = run_verify_suite(VerifySuiteConfig(suite="theorem", groups=("heisenberg:p=3:k=2",)))
    text = render_report(r, "text").decode()
    assert "PASS strict-center-chain |Z| chain 9<81<729" in text


def test_string_suite_on_abelian_input_is_vacuous():
    r = run_verify_suite(VerifySuiteConfig(suite="theorem", groups=("abelian:9x3",)))
    assert r.passed
    length = next(c for c in r.checks if c.anchor == "string-length")
    assert length.detail.startswith("1 terms")


def test_mixed_prime_suite_default():
    r = run_verify_suite(VerifySuiteConfig(suite="corollary"))
    assert r.passed
    chain = next(c for c in r.checks if c.anchor == "strict-center-chain")
    assert chain.detail == "|Z| chain 15<135<3375"


def test_failures_carry_witness_and_replay():
    cfg = VerifySuiteConfig(suite="associativity", groups=("unitriangular:n=4:p=3",), strict=False)
    r = run_verify_suite(cfg)
    assert r.status == "fail"
    (c,) = r.checks
    assert c.witness is not None
    assert "--unchecked" in c.replay and "unitriangular:n=4:p=3" in c.replay


def test_budget_status():
    cfg = VerifySuiteConfig(suite="theorem", groups=("heisenberg:p=3:k=2",), node_budget=1)
    r = run_verify_suite(cfg)
    assert r.status == "budget" and r.exit_code == 3


def test_associativity_witness_modes(h31, ut43):
    from nilstring.twist import TwistedGroup

    assert associativity_witness(h31) == (None, "exhaustive")
    w, mode = associativity_witness(TwistedGroup(ut43, 1, strict=False), samples=20_000)
    assert mode == "sampled" and w is not None


def test_output_file(tmp_path):
    out = tmp_path / "r.json"
    run_verify_suite(VerifySuiteConfig(suite="lemma-center", groups=("heisenberg:p=3",), output=str(out)))
    data = json.loads(out.read_text())
    assert data["status"] == "pass" and "timings" not in data


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["p4-classification", "theorem", "lemma-center", "associativity"])
def test_extended_prime_five(suite):
    r = run_verify_suite(VerifySuiteConfig(suite=suite, primes=(5,), samples=200_000))
    assert r.passed, [c for c in r.checks if c.status != "pass"]
