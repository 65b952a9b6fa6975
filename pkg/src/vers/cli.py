"""Command-line experiment runner.

    vers simulate      --config cfg.json --out DIR
    vers threshold     --config cfg.json --out DIR [--jobs N]
    vers matrix        --config cfg.json --out DIR
    vers tag-collision --config cfg.json --out DIR

Exit codes: 0 success, 1 configuration error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import random
import sys
from pathlib import Path

import jsonschema

from . import __version__
from .algebra import (
    MAX_ENUMERABLE_BLOCKS,
    characteristic_matrix,
    classify_permutations,
    relation_matrix,
    monomial_to_json,
)
from .config import VersConfig
from .decode import (
    Ambiguous,
    Insufficient,
    Recovered,
    ambiguity_analyze,
    decode_all,
    partition_by_tags,
    threshold_search,
)
from .errors import InternalInconsistency, VersError
from .protocol import (
    AdversarialBehavior,
    TagMode,
    behavior_family,
    converse_covered_workers,
    derive_tag_key,
    measure_tag_collisions,
    random_behavior,
    round_transcript,
    run_round,
    sample_owner_data,
    true_values,
)
from .schemas import EXPERIMENT_CONFIG, THRESHOLD_CSV_COLUMNS


class ConfigError(Exception):
    pass


def load_experiment(path: str, seed: int | None = None, field: int | None = None, tag_mode: str | None = None) -> dict:
    """Read and validate an experiment config, applying command-line overrides."""
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        jsonschema.validate(cfg, EXPERIMENT_CONFIG)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"invalid config: {exc.message}") from exc
    if seed is not None:
        cfg["seed"] = seed
    if field is not None:
        cfg["p"] = field
    if tag_mode is not None:
        cfg["tag_mode"] = tag_mode
    cfg.setdefault("seed", 0)
    if "behavior_file" in cfg:
        bf = Path(cfg["behavior_file"])
        if not bf.is_absolute():
            bf = Path(path).parent / bf
        if not bf.exists():
            raise ConfigError(f"behavior file {bf} does not exist")
        cfg["behavior_file"] = str(bf)
    return cfg


def config_hash(cfg: dict) -> str:
    canon = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def meta(cfg: dict) -> dict:
    return {"seed": cfg["seed"], "config_hash": config_hash(cfg), "version": __version__}


def write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _system(cfg: dict) -> VersConfig:
    try:
        return VersConfig.from_json(cfg)
    except (VersError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _behavior(cfg: dict, system: VersConfig) -> AdversarialBehavior:
    cls = cfg.get("behavior_class", "converse")
    if cls == "file":
        data = json.loads(Path(cfg["behavior_file"]).read_text())
        behavior = AdversarialBehavior(tuple(data["behavior"] if isinstance(data, dict) else data))
        behavior.validate(system)
        return behavior
    rng = random.Random(f"behavior:{cfg['seed']}")
    if cls == "random":
        return random_behavior(system, rng)
    if cls == "exhaustive":
        raise ConfigError("simulate runs a single behavior; use converse, random, honest or file")
    return behavior_family(system, cls, rng)[0]


def _subset(cfg: dict, system: VersConfig) -> list[int]:
    sub = cfg.get("subset", "all")
    if sub == "all":
        return list(range(1, system.N + 1))
    if sub == "covered":
        return list(converse_covered_workers(system))
    if any(not 1 <= n <= system.N for n in sub) or len(set(sub)) != len(sub):
        raise ConfigError(f"subset must list distinct workers in 1..{system.N}")
    return sorted(sub)


def _outcome_json(outcome, truth) -> dict:
    if isinstance(outcome, Recovered):
        return {"status": "recovered", "value": list(outcome.value), "truth": list(truth), "correct": outcome.value == truth}
    if isinstance(outcome, Ambiguous):
        return {
            "status": "ambiguous",
            "witness": {str(k): list(v) for k, v in sorted(outcome.witness.items())},
            "truth": list(truth),
            "correct": False,
        }
    assert isinstance(outcome, Insufficient)
    return {"status": "insufficient", "largest_group": outcome.largest_group, "truth": list(truth), "correct": False}


def cmd_simulate(cfg: dict, out: Path, jobs: int) -> int:
    system = _system(cfg)
    mode = TagMode(cfg.get("tag_mode", "oracle"))
    behavior = _behavior(cfg, system)
    data = sample_owner_data(system, random.Random(f"owner-data:{cfg['seed']}"))
    key = derive_tag_key(system) if mode is TagMode.FINGERPRINT else None
    reports = run_round(system, data, behavior, mode, key)
    subset = _subset(cfg, system)
    chosen = [reports[n - 1] for n in subset]
    outcomes = decode_all(system, chosen)
    truth = true_values(system, data)
    partition = partition_by_tags(chosen)
    ambiguity = None
    if len(partition.groups) <= MAX_ENUMERABLE_BLOCKS:
        ambiguity = ambiguity_analyze(system, chosen).to_json()

    transcript = round_transcript(system, behavior, reports, mode, key, cfg.get("include_tag_key", False))
    write_json(out / "transcript.json", {"meta": meta(cfg), **transcript})
    write_json(out / "decode.json", {
        "meta": meta(cfg),
        "t": len(subset),
        "t_star": system.t_star,
        "subset": subset,
        "partition": [list(g) for g in partition.groups],
        "outcomes": {str(k): _outcome_json(outcomes[k], truth[k]) for k in system.honest},
        "ambiguity": ambiguity,
    })
    for k in system.honest:
        o = outcomes[k]
        print(f"owner {k}: {type(o).__name__.lower()}")
    return 0


def cmd_threshold(cfg: dict, out: Path, jobs: int) -> int:
    system = _system(cfg)
    cls = cfg.get("behavior_class", "exhaustive")
    rng = random.Random(f"behavior:{cfg['seed']}")
    if cls == "file":
        behaviors = [_behavior(cfg, system)]
    else:
        behaviors = behavior_family(system, cls, rng, cfg.get("behavior_samples", 64))
    result = threshold_search(
        system,
        behaviors,
        cfg.get("trials", 1),
        t_values=cfg.get("t_values"),
        subset_policy=cfg.get("subset_policy", "all"),
        behavior_class=cls,
        seed=cfg["seed"],
        jobs=jobs,
    )
    m = meta(cfg)
    with open(out / "threshold.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(THRESHOLD_CSV_COLUMNS)
        for r in result.rows:
            w.writerow([r.t, r.trials, r.failures, f"{r.failure_rate:.6f}", r.behavior_class, m["seed"], m["config_hash"], m["version"]])
    write_json(out / "threshold.json", {
        "meta": m,
        "t_star": result.t_star,
        "t_hat": result.t_hat,
        "behaviors": len(behaviors),
        "rows": [
            {"t": r.t, "trials": r.trials, "failures": r.failures, "behavior_class": r.behavior_class}
            for r in result.rows
        ],
    })
    print(f"first zero-failure t: {result.t_hat} (t* = {result.t_star})")
    return 0


def cmd_matrix(cfg: dict, out: Path, jobs: int) -> int:
    system = _system(cfg)
    M = characteristic_matrix(system)
    P = relation_matrix(M)
    m = meta(cfg)
    write_json(out / "characteristic_matrix.json", {"meta": m, **M.to_json()})
    write_json(out / "relation_matrix.json", {"meta": m, **P.to_json()})
    write_json(out / "monomials.json", {"meta": m, "monomials": [monomial_to_json(x) for x in M.monomials]})
    if M.num_blocks > MAX_ENUMERABLE_BLOCKS:
        print(
            f"warning: {M.num_blocks} blocks exceeds the enumeration cap of {MAX_ENUMERABLE_BLOCKS}; "
            "permutation report omitted",
            file=sys.stderr,
        )
        return 0
    records = classify_permutations(P, M, system.adversaries)
    non_eff = [r for r in records if not r.effective]
    write_json(out / "permutations.json", {
        "meta": m,
        "total": len(records),
        "non_effective": len(non_eff),
        "expected_non_effective": math.factorial(system.v) ** system.beta,
        "non_effective_equals_product_form": all((not r.effective) == r.product_form for r in records),
        "records": [r.to_json() for r in records],
    })
    print(f"M {M.matrix.rows}x{M.matrix.cols}, rank(P) rows {P.matrix.rows}, non-effective {len(non_eff)}/{len(records)}")
    return 0


def cmd_tag_collision(cfg: dict, out: Path, jobs: int) -> int:
    system = _system(cfg)
    mode = TagMode(cfg.get("tag_mode", "fingerprint"))
    stats = measure_tag_collisions(system, cfg.get("collision_trials", 10**6), mode, seed=cfg["seed"])
    write_json(out / "tag_collision.json", {
        "meta": meta(cfg),
        **stats.to_json(),
        "p": system.p,
        "K": system.K,
        "message_dim": system.message_dim,
        "three_sigma_limit": stats.three_sigma_limit,
    })
    print(f"{stats.collisions}/{stats.trials} collisions, rate {stats.rate:.3g}, bound {stats.bound:.3g}")
    return 0


COMMANDS = {
    "simulate": cmd_simulate,
    "threshold": cmd_threshold,
    "matrix": cmd_matrix,
    "tag-collision": cmd_tag_collision,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="experiment config (JSON)")
    common.add_argument("--seed", type=int, help="override the config seed")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--field", type=int, help="override the field modulus p")
    common.add_argument("--tag-mode", choices=[m.value for m in TagMode])
    ap = argparse.ArgumentParser(prog="vers", description="Vers coded-computing experiments")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_experiment(args.config, args.seed, args.field, args.tag_mode)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](cfg, out, max(1, args.jobs))
    except InternalInconsistency as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, VersError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
