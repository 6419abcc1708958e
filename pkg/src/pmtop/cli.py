"""Batch front end: load a config, dispatch one operation group, emit
newline-delimited JSON report records.

Meant for scripts and CI, not interactive use.  Every record is a single
self-describing JSON object in canonical form (sorted keys, compact
separators, no timestamps), so identical flags produce byte-identical
reports and the files stay grep-able.

Exit codes: 0 all checks passed, 1 violations found, 2 infeasible or
precondition failures only, 3 unreadable or invalid config.

Config schema (unknown fields are rejected at every level):

    {
      "instance": {"family": "rational_from" | "step_from",
                    "modular": {"kind": "p_power", "p": 2.0}
                             | {"kind": "weighted_abs", "weights": [..]},
                    "dim": 2, "declared_c": 4.0, "declared_beta": 1.0},
      "budget":   {"n_vectors": 1000, "n_scalar_pairs": 1000,
                    "t_grid": [..] | {"min": 1e-3, "max": 1e3, "count": 64},
                    "epsilon": 1e-9, "rng_seed": 0,
                    "vector_law": "standard_normal"},
      "operation": { ... subcommand-specific parameters ... },
      "out": "report.ndjson"
    }

PM_TOPOLOGY_THREADS caps the worker pool used for independent checks
within one subcommand; results merge in submission order, so the thread
count never changes the report.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable

import numpy as np

from . import balls as _balls
from . import convergence as _conv
from . import falsifier as _fals
from . import topology as _topo
from .distfn import SampleBudget, default_t_grid
from .pmspace import (
    InfeasibleConstruction,
    PMSpace,
    VerificationError,
    check_axioms,
    check_beta_homogeneous,
    check_delta2_declared,
    check_space_regularity,
    find_delta2_constant,
)

SUBCOMMANDS = (
    "check-axioms", "check-delta2", "check-homogeneous", "check-regularity",
    "ball-identities", "witness-refine", "witness-separate",
    "witness-continuity", "check-convergence", "falsify",
)


class ConfigError(Exception):
    pass


def _reject_unknown(d: dict[str, Any], allowed: set[str], where: str) -> None:
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"unknown fields in {where}: {sorted(unknown)}")


def _build_instance(cfg: dict[str, Any]) -> PMSpace:
    if not isinstance(cfg, dict):
        raise ConfigError("instance must be an object")
    _reject_unknown(cfg, {"family", "modular", "dim", "declared_c",
                          "declared_beta"}, "instance")
    for key in ("family", "modular", "dim"):
        if key not in cfg:
            raise ConfigError(f"instance.{key} is required")
    modular = cfg["modular"]
    if not isinstance(modular, dict) or "kind" not in modular:
        raise ConfigError("instance.modular must be an object with a kind")
    allowed = {"p_power": {"kind", "p"}, "weighted_abs": {"kind", "weights"}}
    kind = modular["kind"]
    if kind not in allowed:
        raise ConfigError(f"unknown modular kind {kind!r}")
    _reject_unknown(modular, allowed[kind], "instance.modular")
    try:
        return PMSpace.from_config(cfg)
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"invalid instance: {exc}") from exc


def _build_budget(cfg: dict[str, Any], args: argparse.Namespace) -> SampleBudget:
    if not isinstance(cfg, dict):
        raise ConfigError("budget must be an object")
    _reject_unknown(cfg, {"n_vectors", "n_scalar_pairs", "t_grid", "epsilon",
                          "rng_seed", "vector_law"}, "budget")
    cfg = dict(cfg)
    grid = cfg.get("t_grid")
    if isinstance(grid, dict):
        _reject_unknown(grid, {"min", "max", "count"}, "budget.t_grid")
        cfg["t_grid"] = default_t_grid(grid["min"], grid["max"], int(grid["count"]))
    if args.t_grid is not None:
        try:
            lo, hi, count = args.t_grid.split(",")
            cfg["t_grid"] = default_t_grid(float(lo), float(hi), int(count))
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"bad --t-grid {args.t_grid!r}: {exc}") from exc
    if args.samples is not None:
        cfg["n_vectors"] = args.samples
        cfg["n_scalar_pairs"] = args.samples
    if args.epsilon is not None:
        cfg["epsilon"] = args.epsilon
    if args.seed is not None:
        cfg["rng_seed"] = args.seed
    try:
        return SampleBudget(**cfg)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"invalid budget: {exc}") from exc


def _operation(cfg: dict[str, Any], allowed: set[str], command: str) -> dict[str, Any]:
    op = cfg.get("operation", {})
    if not isinstance(op, dict):
        raise ConfigError("operation must be an object")
    _reject_unknown(op, allowed, f"operation ({command})")
    return op


def _point(op: dict[str, Any], key: str, space: PMSpace,
           fallback: np.ndarray) -> np.ndarray:
    if key in op:
        try:
            v = np.asarray(op[key], dtype=float)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"operation.{key} must be a vector") from exc
        if v.shape != (space.dim,):
            raise ConfigError(f"operation.{key} must have dimension {space.dim}")
        return v
    return fallback


def _ball_from(op_ball: dict[str, Any], space: PMSpace, where: str) -> _balls.Ball:
    _reject_unknown(op_ball, {"center", "level", "scale"}, where)
    try:
        return _balls.Ball(space, np.asarray(op_ball["center"], dtype=float),
                           float(op_ball["level"]), float(op_ball["scale"]))
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"invalid ball in {where}: {exc}") from exc


# ---------------------------------------------------------------------------
# Record plumbing.
# ---------------------------------------------------------------------------


def canonical_line(record: dict[str, Any]) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def exit_code_from_records(records: list[dict[str, Any]]) -> int:
    verdicts = {r.get("verdict") for r in records}
    if "fail" in verdicts:
        return 1
    if "infeasible" in verdicts:
        return 2
    return 0


def _thread_count() -> int:
    raw = os.environ.get("PM_TOPOLOGY_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_ordered(tasks: list[Callable[[], dict[str, Any]]]) -> list[dict[str, Any]]:
    """Run independent record builders, preserving submission order."""
    workers = min(_thread_count(), max(len(tasks), 1))
    if workers == 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda t: t(), tasks))


def _witness_record(name: str, build: Callable[[], Any]) -> dict[str, Any]:
    try:
        witness = build()
    except InfeasibleConstruction as exc:
        return {"check": name, "verdict": "infeasible", "reason": str(exc)}
    except (VerificationError, ValueError) as exc:
        return {"check": name, "verdict": "infeasible",
                "reason": f"precondition: {exc}"}
    rec = witness.to_record()
    rec["check"] = name
    rec["verdict"] = "pass" if witness.evidence.passed else "fail"
    return rec


# ---------------------------------------------------------------------------
# Subcommand handlers: (space, budget, config) -> list of records.
# ---------------------------------------------------------------------------


def _h_check_axioms(space, budget, cfg):
    op = _operation(cfg, {"mutation"}, "check-axioms")
    if "mutation" in op:
        if op["mutation"] not in _fals.MUTATION_KINDS:
            raise ConfigError(f"unknown mutation {op['mutation']!r}")
        space = _fals.apply_mutation(space, op["mutation"], budget.rng_seed)
    rep = check_axioms(space, budget)
    records = [dict(part.to_record(), check=name)
               for name, part in rep.parts.items()]
    records.append({"check": "axioms", "verdict": "pass" if rep.passed else "fail",
                    "seed": budget.rng_seed})
    return records


def _h_check_delta2(space, budget, cfg):
    op = _operation(cfg, {"candidates"}, "check-delta2")
    candidates = tuple(float(c) for c in op.get("candidates", ())) or None
    kwargs = {"c_candidates": candidates} if candidates else {}
    found = find_delta2_constant(space, budget, **kwargs)
    records = [{"check": "delta2_estimate", "seed": budget.rng_seed,
                "estimated_c": found,
                "verdict": "pass" if found is not None else "fail"}]
    if space.declared_c is not None:
        records.append(check_delta2_declared(space, budget).to_record())
    return records


def _h_check_homogeneous(space, budget, cfg):
    op = _operation(cfg, {"beta"}, "check-homogeneous")
    beta = op.get("beta", space.declared_beta)
    if beta is None:
        raise ConfigError("check-homogeneous needs operation.beta or a declared exponent")
    return [check_beta_homogeneous(space, float(beta), budget).to_record()]


def _h_check_regularity(space, budget, cfg):
    _operation(cfg, set(), "check-regularity")
    return [check_space_regularity(space, budget).to_record()]


def _h_ball_identities(space, budget, cfg):
    op = _operation(cfg, {"level", "scale", "level2", "scale2"}, "ball-identities")
    level = float(op.get("level", 0.4))
    scale = float(op.get("scale", 1.0))
    level2 = float(op.get("level2", 0.7))
    scale2 = float(op.get("scale2", 2.0))
    rng = np.random.default_rng(budget.rng_seed)
    x = rng.standard_normal(space.dim)
    tasks = [
        lambda: _balls.translate_identity(space, x, level, scale, budget).to_record(),
        lambda: _balls.monotone_in_scale(space, level, scale, scale2, budget).to_record(),
        lambda: _balls.monotone_in_level(space, level, level2, scale, budget).to_record(),
    ]
    if space.declared_beta is not None:
        beta = space.declared_beta
        ball0 = _balls.Ball(space, space.zero(), level, scale)
        tasks += [
            lambda: _balls.scaling_identity(space, beta, level, scale2, budget).to_record(),
            lambda: _balls.is_balanced_sampled(ball0, budget).to_record(),
            lambda: _balls.is_convex_sampled(ball0, budget).to_record(),
        ]
        return _run_ordered(tasks)
    records = _run_ordered(tasks)
    for name in ("scaling_identity", "balanced", "convex"):
        records.append({"check": name, "verdict": "infeasible",
                        "reason": "no declared homogeneity exponent"})
    return records


def _h_witness_refine(space, budget, cfg):
    op = _operation(cfg, {"outer", "z"}, "witness-refine")
    if "outer" in op:
        outer = _ball_from(op["outer"], space, "operation.outer")
        z = _point(op, "z", space, outer.center)
    else:
        rng = np.random.default_rng(budget.rng_seed)
        got = _fals._feasible_refinement_input(space, rng)
        if got is None:
            return [{"check": "refine_ball", "verdict": "infeasible",
                     "reason": "no feasible refinement input found"}]
        outer, z = got
    return [_witness_record("refine_ball",
                            lambda: _topo.refine_ball(space, outer, z, budget))]


def _h_witness_separate(space, budget, cfg):
    op = _operation(cfg, {"x", "y", "variant"}, "witness-separate")
    variant = op.get("variant", "doubling")
    rng = np.random.default_rng(budget.rng_seed)
    x = _point(op, "x", space, rng.standard_normal(space.dim))
    if variant == "homogeneous":
        return [_witness_record("homogeneous_separation",
                                lambda: _topo.homogeneous_separation_witness(
                                    space, x, budget))]
    if variant != "doubling":
        raise ConfigError(f"unknown separation variant {variant!r}")
    y = _point(op, "y", space, rng.standard_normal(space.dim))
    return [_witness_record("separation",
                            lambda: _topo.separation_witness(space, x, y, budget))]


def _h_witness_continuity(space, budget, cfg):
    op = _operation(cfg, {"target", "scalar"}, "witness-continuity")
    target = (_ball_from(op["target"], space, "operation.target")
              if "target" in op
              else _balls.Ball(space, space.zero(), 0.5, 1.0))
    scalar = float(op.get("scalar", 2.0))
    tasks = [
        lambda: _witness_record("addition_continuity",
                                lambda: _topo.addition_continuity_witness(
                                    space, target, budget)),
        lambda: _witness_record("scalar_continuity",
                                lambda: _topo.scalar_continuity_witness(
                                    space, target, scalar, budget)),
    ]
    return _run_ordered(tasks)


def _h_check_convergence(space, budget, cfg):
    op = _operation(cfg, {"sequence", "t_grid", "n_max", "local_base_depth"},
                    "check-convergence")
    if "sequence" not in op:
        raise ConfigError("check-convergence needs operation.sequence")
    seq_cfg = op["sequence"]
    _reject_unknown(seq_cfg, {"kind", "base", "direction", "ratio",
                              "candidate_limit"}, "operation.sequence")
    try:
        seq = _conv.SequenceSpec.from_config(seq_cfg)
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"invalid sequence: {exc}") from exc
    n_max = int(op.get("n_max", _conv.N_MAX))
    grid = tuple(float(t) for t in op["t_grid"]) if "t_grid" in op else None
    depth = int(op.get("local_base_depth", _conv.LOCAL_BASE_DEPTH))

    mu_v = _conv.check_mu_convergence(space, seq, t_grid=grid, n_max=n_max)
    balls = _conv.local_base(space, seq.candidate_limit, depth=depth)
    topo_v = _conv.check_topological_convergence(space, seq, balls=balls,
                                                 n_max=n_max)
    agree = mu_v.converges == topo_v.converges
    return [
        {"check": "mu_convergence", "verdict": "pass", "seed": budget.rng_seed,
         **mu_v.to_record()},
        {"check": "topological_convergence", "verdict": "pass",
         "seed": budget.rng_seed, **topo_v.to_record()},
        {"check": "convergence_equivalence", "seed": budget.rng_seed,
         "verdict": "pass" if agree else "fail",
         "mu_converges": mu_v.converges,
         "topological_converges": topo_v.converges},
    ]


def _h_falsify(space, budget, cfg):
    op = _operation(cfg, {"mutation", "predicates"}, "falsify")
    mutation = op.get("mutation")
    if mutation is not None:
        if mutation not in _fals.MUTATION_KINDS:
            raise ConfigError(f"unknown mutation {mutation!r}")
        space = _fals.apply_mutation(space, mutation, budget.rng_seed)
    predicates = op.get("predicates")
    if predicates is not None and not isinstance(predicates, list):
        raise ConfigError("operation.predicates must be a list")
    run = _fals.run_registry(space, budget, predicates=predicates,
                             instance=_fals.instance_config(space, mutation))
    records = []
    for name, result in run.results.items():
        rec = {"check": name, "verdict": result.outcome, "seed": run.seed}
        # the registry outcome is authoritative; embedded report fields
        # must not shadow it
        rec.update({k: v for k, v in result.record.items()
                    if k not in ("check", "verdict")})
        records.append(rec)
    return records


HANDLERS = {
    "check-axioms": _h_check_axioms,
    "check-delta2": _h_check_delta2,
    "check-homogeneous": _h_check_homogeneous,
    "check-regularity": _h_check_regularity,
    "ball-identities": _h_ball_identities,
    "witness-refine": _h_witness_refine,
    "witness-separate": _h_witness_separate,
    "witness-continuity": _h_witness_continuity,
    "check-convergence": _h_check_convergence,
    "falsify": _h_falsify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # config errors exit with 3
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(3)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pmtop",
                     description="Probabilistic modular space checks and witnesses")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, help=f"run the {name} group")
        p.add_argument("--config", required=True, help="path to a JSON config")
        p.add_argument("--seed", type=int, default=None,
                       help="override budget.rng_seed (default 0)")
        p.add_argument("--samples", type=int, default=None,
                       help="override both sample counts")
        p.add_argument("--out", default=None, help="report path (default stdout)")
        p.add_argument("--t-grid", dest="t_grid", default=None,
                       metavar="MIN,MAX,COUNT", help="override the scale grid")
        p.add_argument("--epsilon", type=float, default=None,
                       help="override the check tolerance")
    return parser


def run(cfg: dict[str, Any], command: str,
        args: argparse.Namespace) -> tuple[list[dict[str, Any]], int]:
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be an object")
    _reject_unknown(cfg, {"instance", "budget", "operation", "out"}, "config")
    if "instance" not in cfg:
        raise ConfigError("config.instance is required")
    space = _build_instance(cfg["instance"])
    budget = _build_budget(cfg.get("budget", {}), args)
    records = HANDLERS[command](space, budget, cfg)
    for rec in records:
        rec.setdefault("seed", budget.rng_seed)
        rec.setdefault("budget", {"n_vectors": budget.n_vectors,
                                  "n_scalar_pairs": budget.n_scalar_pairs,
                                  "epsilon": budget.epsilon,
                                  "rng_seed": budget.rng_seed,
                                  "t_grid_size": len(budget.t_grid)})
    return records, exit_code_from_records(records)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config {args.config}: {exc}", file=sys.stderr)
        return 3
    try:
        records, code = run(cfg, args.command, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    text = "".join(canonical_line(rec) + "\n" for rec in records)
    out_path = args.out or cfg.get("out")
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
