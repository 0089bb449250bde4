"""End-to-end CLI checks on the fixture corpus: exit codes, JSON shape,
exact frozen values, and byte determinism."""

from __future__ import annotations

import contextlib
import io
import json
from pathlib import Path

from quiverbundles.cli import main

FIXTURES = Path(__file__).parent / "fixtures"

REP_STABLE = str(FIXTURES / "rep_adhm_stable.json")
REP_UNSTABLE = str(FIXTURES / "rep_adhm_unstable.json")
BUNDLE_STABLE = str(FIXTURES / "bundle_adhm_stable.json")
BUNDLE_UNSTABLE = str(FIXTURES / "bundle_adhm_unstable.json")
CHAIN_STABLE = str(FIXTURES / "bundle_chain_stable.json")
BROKEN_TWIST = str(FIXTURES / "broken_twist.json")


def run(argv: list[str]) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def run_json(argv: list[str]) -> tuple[int, dict]:
    code, out, _ = run(argv)
    return code, json.loads(out)


def test_validate_accepts_fixtures():
    for path in (REP_STABLE, BUNDLE_STABLE, BUNDLE_UNSTABLE, CHAIN_STABLE):
        code, payload = run_json(["validate", "--input", path])
        assert code == 0
        assert payload == {"valid": True, "violations": []}


def test_validate_broken_twist_exits_2_and_names_arrow():
    code, out, err = run(["validate", "--input", BROKEN_TWIST])
    assert code == 2
    payload = json.loads(out)
    assert payload["valid"] is False
    assert any("frame" in v for v in payload["violations"])
    assert "frame" in err


def test_moment_reports_zero_residual():
    for path in (REP_STABLE, REP_UNSTABLE, BUNDLE_STABLE, CHAIN_STABLE):
        code, payload = run_json(["moment", "--input", path])
        assert code == 0
        assert payload["zero"] is True
        assert set(payload["residual"]) == ({"1"} if "chain" not in path else {"1", "2"})


def test_stability_stable_rep():
    code, payload = run_json(["stability", "--input", REP_STABLE])
    assert code == 0
    assert payload == {"stable": True, "witness": None}


def test_stability_unstable_rep_names_witness_dims():
    code, payload = run_json(["stability", "--input", REP_UNSTABLE])
    assert code == 0
    assert payload["stable"] is False
    assert set(payload["witness"]["dims"]) == {"0", "1"}
    code, _, _ = run(["stability", "--input", REP_UNSTABLE, "--strict"])
    assert code == 1


def test_stability_bundle_with_delta_verdict():
    code, payload = run_json(["stability", "--input", BUNDLE_STABLE, "--delta", "50"])
    assert code == 0
    assert payload["stable"] is True
    verdict = payload["delta_verdict"]
    assert verdict["delta"] == "50"
    assert verdict["refutes_stability"] is False
    assert verdict["witness"] is None
    code, payload = run_json(["stability", "--input", BUNDLE_UNSTABLE])
    assert code == 0 and payload["stable"] is False
    code, _, _ = run(["stability", "--input", BUNDLE_UNSTABLE, "--strict"])
    assert code == 1


def test_base_locus_documents_failure_polynomial():
    code, payload = run_json(["base-locus", "--input", BUNDLE_STABLE])
    assert code == 0
    assert payload["stable"] is True
    assert payload["polynomial"] != "0"  # stable: base locus is a finite set
    code, payload = run_json(["base-locus", "--input", BUNDLE_UNSTABLE])
    assert payload["stable"] is False and payload["polynomial"] == "0"
    code, _, _ = run(["base-locus", "--input", BUNDLE_UNSTABLE, "--strict"])
    assert code == 1


def test_slope_from_flags_matches_table():
    code, payload = run_json(
        ["slope", "--v0", "1", "--v1", "2", "--d", "3", "--delta", "5"]
    )
    assert code == 0
    assert payload["class"] == {"v0": "1", "v1": "2", "d": "3"}
    assert payload["mu_delta"] == "4"          # (3 + 5*1) / 2
    assert payload["mu_st"] == "1"             # 3 / (1 + 2)
    assert payload["mu1"] == "3/2"             # 3 / 2
    assert payload["mu2_proof"] == "5/2"       # 5*1 / 2
    assert payload["mu2_Z"] == "5"             # 2*5*1 / 2
    code, _, err = run(["slope", "--v0", "1", "--v1", "2", "--d", "3"])
    assert code == 2 and "--delta" in err


def test_slope_from_instance_uses_threshold_default():
    code, payload = run_json(["slope", "--input", BUNDLE_STABLE])
    assert code == 0
    frozen = run_json(["delta-threshold", "--input", BUNDLE_STABLE])[1]
    assert payload["delta"] == frozen["delta0"]
    code, _, err = run(["slope", "--input", BUNDLE_STABLE, "--v0", "1"])
    assert code == 2 and "not both" in err


def test_delta_threshold_frozen_value():
    code, payload = run_json(
        ["delta-threshold", "--v0", "1", "--v1", "2", "--mu1", "0", "--N", "9"]
    )
    assert code == 0
    assert payload == {"delta0": "19"}


def test_delta_threshold_from_instance():
    code, payload = run_json(["delta-threshold", "--input", BUNDLE_STABLE])
    assert code == 0
    assert set(payload) == {"delta0", "N", "mu1"}
    assert int(payload["N"]) >= 0


def test_asym_check_agrees_on_fixtures():
    for path in (BUNDLE_STABLE, BUNDLE_UNSTABLE, CHAIN_STABLE):
        code, payload = run_json(["asym-check", "--input", path])
        assert code == 0
        assert payload["agree"] is True
        assert payload["informative_only"] is False
        code, _, _ = run(["asym-check", "--input", path, "--strict"])
        assert code == 0


def test_hn_bound_holds_on_stable_fixtures():
    for path in (BUNDLE_STABLE, CHAIN_STABLE):
        code, payload = run_json(["hn-bound", "--input", path])
        assert code == 0
        assert payload["holds"] is True


def test_defcomplex_symmetry_fields():
    code, payload = run_json(["defcomplex", "--input", BUNDLE_STABLE])
    assert code == 0
    assert payload["h"]["-1"] == "0" and payload["h"]["2"] == "0"
    assert payload["h"]["0"] == payload["h"]["1"]
    assert payload["euler"] == "0" == payload["euler_rr"]
    assert payload["stabilized"] is True
    wider = run_json(
        ["defcomplex", "--input", BUNDLE_STABLE, "--window", payload["window"]]
    )[1]
    assert wider["h"] == payload["h"]


def test_gen_writes_parseable_deterministic_documents(tmp_path):
    args = ["gen", "--kind", "bundle", "--preset", "adhm", "--dims", "2",
            "--seed", "1", "--out", "-"]
    first = run(args)
    second = run(args)
    assert first == second and first[0] == 0
    doc = json.loads(first[1])
    assert doc["kind"] == "bundle" and doc["meta"] == {"preset": "adhm", "seed": 1}
    target = tmp_path / "inst.json"
    code, payload = run_json(
        ["gen", "--kind", "rep", "--preset", "chain", "--dims", "1,1",
         "--seed", "2", "--level", "1", "--out", str(target)]
    )
    assert code == 0 and payload == {"written": str(target)}
    written = json.loads(target.read_text())
    assert written["kind"] == "rep" and written["lambda"] == {"1": "1", "2": "1"}
    code, verdict = run_json(["validate", "--input", str(target)])
    assert code == 0 and verdict["valid"] is True


def test_suite_smoke_and_unknown_name():
    code, payload = run_json(["suite", "--name", "moment-zero", "--count", "4"])
    assert code == 0
    assert payload == {
        "failures": [], "instances": "4", "passed": True, "suite": "moment-zero"
    }
    code, _, err = run(["suite", "--name", "bogus"])
    assert code == 2 and "bogus" in err


def test_schema_flag_prints_shipped_schema():
    code, out, _ = run(["--schema"])
    assert code == 0
    schema = json.loads(out)
    assert schema["properties"]["version"]["const"] == 1
    shipped = (
        Path(__file__).parents[1]
        / "src" / "quiverbundles" / "schema" / "instance-v1.json"
    ).read_text()
    assert out == shipped
    code, _, err = run([])
    assert code == 2 and "usage" in err


def test_input_problems_exit_2():
    code, _, err = run(["moment", "--input", "/no/such/file.json"])
    assert code == 2 and err.startswith("error:")
    code, _, err = run(["asym-check", "--input", REP_STABLE])
    assert code == 2 and "bundle" in err
    code, _, _ = run(["not-a-command"])
    assert code == 2


def test_output_is_byte_deterministic_across_runs():
    calls = [
        ["validate", "--input", CHAIN_STABLE],
        ["moment", "--input", REP_STABLE],
        ["stability", "--input", BUNDLE_STABLE, "--delta", "40"],
        ["base-locus", "--input", BUNDLE_UNSTABLE],
        ["slope", "--input", CHAIN_STABLE],
        ["delta-threshold", "--input", CHAIN_STABLE],
        ["asym-check", "--input", BUNDLE_STABLE],
        ["hn-bound", "--input", CHAIN_STABLE],
        ["defcomplex", "--input", CHAIN_STABLE],
        ["suite", "--name", "hamiltonian", "--count", "3"],
    ]
    for argv in calls:
        assert run(argv) == run(argv)
