"""CLI: config validation, exit codes, canonical report round-trips."""

import json
import subprocess
import sys

import pytest

from pmtop import cli


def write_config(tmp_path, cfg, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


RATIONAL = {
    "instance": {"family": "rational_from",
                 "modular": {"kind": "p_power", "p": 1.0},
                 "dim": 2, "declared_c": 2.0},
    "budget": {"n_vectors": 800, "rng_seed": 0},
}

HOMOGENEOUS = {
    "instance": {"family": "rational_from",
                 "modular": {"kind": "weighted_abs", "weights": [1.0]},
                 "dim": 1, "declared_c": 2.0, "declared_beta": 1.0},
    "budget": {"n_vectors": 500, "rng_seed": 0},
}

STEP = {
    "instance": {"family": "step_from",
                 "modular": {"kind": "weighted_abs", "weights": [1.0]},
                 "dim": 1, "declared_c": 2.0, "declared_beta": 1.0},
    "budget": {"n_vectors": 500, "rng_seed": 0},
}


def test_check_axioms_passes_on_valid_instance(tmp_path, capsys):
    cfg = write_config(tmp_path, RATIONAL)
    assert cli.main(["check-axioms", "--config", cfg]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert {json.loads(l)["check"] for l in lines} >= {"pm1", "pm2", "pm3", "pm4"}


def test_mutated_instance_exits_with_violation_code(tmp_path):
    cfg = json.loads(json.dumps(RATIONAL))
    cfg["operation"] = {"mutation": "break_pm3",
                        "predicates": ["pm1", "pm2", "pm3", "pm4"]}
    path = write_config(tmp_path, cfg)
    assert cli.main(["falsify", "--config", path]) == 1


def test_check_axioms_on_mutated_instance_exits_one(tmp_path):
    cfg = json.loads(json.dumps(RATIONAL))
    cfg["operation"] = {"mutation": "break_pm3"}
    path = write_config(tmp_path, cfg)
    assert cli.main(["check-axioms", "--config", path]) == 1


def test_infeasible_witness_exits_with_code_two(tmp_path):
    cfg = json.loads(json.dumps(STEP))
    cfg["operation"] = {"variant": "homogeneous", "x": [1.0]}
    path = write_config(tmp_path, cfg)
    assert cli.main(["witness-separate", "--config", path]) == 2


def test_negative_dimension_is_a_config_error(tmp_path):
    cfg = json.loads(json.dumps(RATIONAL))
    cfg["instance"]["dim"] = -3
    path = write_config(tmp_path, cfg)
    assert cli.main(["check-axioms", "--config", path]) == 3


def test_unknown_fields_are_rejected(tmp_path):
    cfg = json.loads(json.dumps(RATIONAL))
    cfg["extra"] = 1
    path = write_config(tmp_path, cfg)
    assert cli.main(["check-axioms", "--config", path]) == 3

    cfg = json.loads(json.dumps(RATIONAL))
    cfg["instance"]["surprise"] = True
    path = write_config(tmp_path, cfg)
    assert cli.main(["check-axioms", "--config", path]) == 3

    cfg = json.loads(json.dumps(RATIONAL))
    cfg["budget"]["walltime"] = 5
    path = write_config(tmp_path, cfg)
    assert cli.main(["check-axioms", "--config", path]) == 3


def test_unreadable_config_is_a_config_error():
    assert cli.main(["check-axioms", "--config", "/no/such/file.json"]) == 3


def test_bad_subcommand_is_a_config_error(tmp_path, capsys):
    cfg = write_config(tmp_path, RATIONAL)
    assert cli.main(["frobnicate", "--config", cfg]) == 3
    capsys.readouterr()


def test_bad_t_grid_flag(tmp_path):
    cfg = write_config(tmp_path, RATIONAL)
    assert cli.main(["check-axioms", "--config", cfg, "--t-grid", "abc"]) == 3


def test_reports_are_byte_identical_across_runs(tmp_path):
    cfg = write_config(tmp_path, RATIONAL)
    out1, out2 = str(tmp_path / "r1.ndjson"), str(tmp_path / "r2.ndjson")
    assert cli.main(["check-axioms", "--config", cfg, "--out", out1]) == 0
    assert cli.main(["check-axioms", "--config", cfg, "--out", out2]) == 0
    assert open(out1, "rb").read() == open(out2, "rb").read()


def test_reports_round_trip_to_identical_bytes(tmp_path):
    cfg = json.loads(json.dumps(HOMOGENEOUS))
    cfg["operation"] = {"sequence": {"kind": "harmonic", "base": [0.0],
                                     "direction": [0.3]},
                        "t_grid": [0.5, 5.0, 50.0]}
    path = write_config(tmp_path, cfg)
    out = str(tmp_path / "report.ndjson")
    assert cli.main(["check-convergence", "--config", path, "--out", out]) == 0
    for line in open(out, "r", encoding="utf-8"):
        assert cli.canonical_line(json.loads(line)) == line.rstrip("\n")


def test_exit_code_is_a_pure_function_of_records():
    assert cli.exit_code_from_records([{"verdict": "pass"}]) == 0
    assert cli.exit_code_from_records([{"verdict": "pass"},
                                       {"verdict": "infeasible"}]) == 2
    assert cli.exit_code_from_records([{"verdict": "infeasible"},
                                       {"verdict": "fail"}]) == 1
    assert cli.exit_code_from_records([]) == 0


def test_seed_flag_reaches_the_report(tmp_path, capsys):
    cfg = write_config(tmp_path, RATIONAL)
    assert cli.main(["check-axioms", "--config", cfg, "--seed", "9"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert all(json.loads(l)["seed"] == 9 for l in lines)


def test_samples_flag_overrides_budget(tmp_path, capsys):
    cfg = write_config(tmp_path, RATIONAL)
    assert cli.main(["check-axioms", "--config", cfg, "--samples", "123"]) == 0
    rec = json.loads(capsys.readouterr().out.splitlines()[0])
    assert rec["budget"]["n_vectors"] == 123


def test_homogeneity_subcommand_uses_declared_exponent(tmp_path, capsys):
    cfg = write_config(tmp_path, HOMOGENEOUS)
    assert cli.main(["check-homogeneous", "--config", cfg]) == 0
    capsys.readouterr()


def test_ball_identities_subcommand(tmp_path, capsys):
    cfg = write_config(tmp_path, HOMOGENEOUS)
    assert cli.main(["ball-identities", "--config", cfg]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    checks = {json.loads(l)["check"] for l in lines}
    assert checks >= {"translate_identity", "monotone_in_scale",
                      "monotone_in_level", "scaling_identity", "balanced",
                      "convex"}


def test_witness_refine_subcommand_with_explicit_input(tmp_path, capsys):
    cfg = json.loads(json.dumps(RATIONAL))
    cfg["instance"]["dim"] = 1
    cfg["operation"] = {"outer": {"center": [0.0], "level": 0.5, "scale": 1.0},
                        "z": [0.4]}
    path = write_config(tmp_path, cfg)
    assert cli.main(["witness-refine", "--config", path]) == 0
    rec = json.loads(capsys.readouterr().out.splitlines()[0])
    assert rec["verdict"] == "pass" and rec["inner"]["level"] == pytest.approx(0.25)


def test_regularity_subcommand_fails_on_step(tmp_path):
    cfg = write_config(tmp_path, STEP)
    assert cli.main(["check-regularity", "--config", cfg]) == 1


def test_delta2_subcommand(tmp_path, capsys):
    cfg = write_config(tmp_path, RATIONAL)
    assert cli.main(["check-delta2", "--config", cfg]) == 0
    recs = [json.loads(l) for l in capsys.readouterr().out.strip().splitlines()]
    by_check = {r["check"]: r for r in recs}
    assert by_check["delta2_estimate"]["estimated_c"] == pytest.approx(2.0)
    assert by_check["delta2_declared"]["verdict"] == "pass"


def test_falsify_on_valid_step_instance_reports_probe_findings_as_data(tmp_path):
    # The regularity probe's negative finding on a step family is data,
    # not a violation: the record keeps verdict pass with the flag false,
    # and the run exits 2 only because regularity-based witnesses are
    # infeasible there.
    path = write_config(tmp_path, STEP)
    out = str(tmp_path / "report.ndjson")
    assert cli.main(["falsify", "--config", path, "--out", out]) == 2
    by_check = {r["check"]: r
                for r in (json.loads(l) for l in open(out, encoding="utf-8"))}
    assert by_check["regularity"]["verdict"] == "pass"
    assert by_check["regularity"]["property_holds"] is False
    assert by_check["homogeneous_separation"]["verdict"] == "infeasible"
    assert all(r["verdict"] != "fail" for r in by_check.values())


def test_thread_count_does_not_change_reports(tmp_path, monkeypatch):
    cfg = write_config(tmp_path, HOMOGENEOUS)
    out1, out2 = str(tmp_path / "one.ndjson"), str(tmp_path / "four.ndjson")
    monkeypatch.delenv("PM_TOPOLOGY_THREADS", raising=False)
    assert cli.main(["ball-identities", "--config", cfg, "--out", out1]) == 0
    monkeypatch.setenv("PM_TOPOLOGY_THREADS", "4")
    assert cli.main(["ball-identities", "--config", cfg, "--out", out2]) == 0
    assert open(out1, "rb").read() == open(out2, "rb").read()


def test_module_entrypoint_runs_as_subprocess(tmp_path):
    cfg = write_config(tmp_path, RATIONAL)
    proc = subprocess.run(
        [sys.executable, "-m", "pmtop.cli", "check-axioms", "--config", cfg,
         "--samples", "200"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.count("\n") >= 4
