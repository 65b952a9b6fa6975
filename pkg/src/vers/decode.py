"""Honest-owner decoding: tag partitioning, the pigeonhole decoder, converse-side
ambiguity analysis, and empirical threshold search."""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Sequence, Union

from .config import VersConfig
from .errors import InternalInconsistency
from .field import Underdetermined, Unique, solve, vandermonde
from .poly import lagrange_weights
from .protocol import (
    AdversarialBehavior,
    TagMode,
    WorkerReport,
    run_round,
    sample_owner_data,
    true_values,
)


@dataclass(frozen=True)
class Partition:
    """Workers grouped by equal tag, groups in order of first appearance."""

    groups: tuple
    tags: tuple

    @property
    def sizes(self) -> list[int]:
        return [len(g) for g in self.groups]


def partition_by_tags(reports: Sequence[WorkerReport]) -> Partition:
    buckets: dict = {}
    for r in reports:
        buckets.setdefault(r.tag, []).append(r.n)
    return Partition(tuple(tuple(g) for g in buckets.values()), tuple(t.value for t in buckets))


@dataclass(frozen=True)
class Recovered:
    value: tuple


@dataclass(frozen=True)
class Ambiguous:
    """Several qualifying groups decoded to different values (``group index -> value``)."""

    witness: dict


@dataclass(frozen=True)
class Insufficient:
    largest_group: int


DecodeOutcome = Union[Recovered, Ambiguous, Insufficient]


def _group_decode(config: VersConfig, reps: Sequence[WorkerReport], target: int) -> tuple:
    """Interpolate the group's degree-``d(K-1)`` polynomial and evaluate it at ``target``."""
    p, bs = config.p, config.block_size
    xs = tuple(r.alpha for r in reps)
    base = xs[:bs]
    for extra in reps[bs:]:
        w = lagrange_weights(p, base, extra.alpha)
        for c in range(config.message_dim):
            pred = sum(wi * r.result[c] for wi, r in zip(w, reps)) % p
            if pred != extra.result[c]:
                raise InternalInconsistency(
                    f"worker {extra.n} is not on the polynomial of its tag group"
                )
    w = lagrange_weights(p, base, target)
    return tuple(sum(wi * r.result[c] for wi, r in zip(w, reps)) % p for c in range(config.message_dim))


def _decode_partition(config: VersConfig, by_n: dict, partition: Partition, owners: Sequence[int]) -> dict:
    qualifying = [i for i, g in enumerate(partition.groups) if len(g) >= config.block_size]
    if not qualifying:
        largest = max(partition.sizes, default=0)
        return {k: Insufficient(largest) for k in owners}
    out = {}
    for k in owners:
        target = config.omegas[k - 1]
        values = {i: _group_decode(config, [by_n[n] for n in partition.groups[i]], target) for i in qualifying}
        distinct = set(values.values())
        out[k] = Recovered(distinct.pop()) if len(distinct) == 1 else Ambiguous(values)
    return out


def achievability_decode(config: VersConfig, reports: Sequence[WorkerReport], owner: int) -> DecodeOutcome:
    """Recover ``f(X_owner)`` from any tag group holding at least ``d(K-1)+1`` workers."""
    return decode_all(config, reports, [owner])[owner]


def decode_all(config: VersConfig, reports: Sequence[WorkerReport], owners: Sequence[int] | None = None) -> dict:
    owners = config.honest if owners is None else owners
    by_n = {r.n: r for r in reports}
    return _decode_partition(config, by_n, partition_by_tags(reports), owners)


# ---------------------------------------------------------------------------
# converse side


@dataclass
class GroupAnalysis:
    workers: tuple
    dimension: int  # -1 when the group's system is inconsistent
    candidates: dict  # honest owner -> sorted list of candidate values (tuples)

    def to_json(self) -> dict:
        return {
            "workers": list(self.workers),
            "dimension": self.dimension,
            "candidates": {str(k): [list(c) for c in v] for k, v in sorted(self.candidates.items())},
        }


@dataclass
class AmbiguityReport:
    groups: list
    non_unique: dict  # honest owner -> bool

    @property
    def certified_non_unique(self) -> bool:
        return any(self.non_unique.values())

    def to_json(self) -> dict:
        return {
            "groups": [g.to_json() for g in self.groups],
            "non_unique": {str(k): v for k, v in sorted(self.non_unique.items())},
            "certified_non_unique": self.certified_non_unique,
        }


def ambiguity_analyze(config: VersConfig, reports: Sequence[WorkerReport], max_samples: int = 64) -> AmbiguityReport:
    """Solve each tag group's Vandermonde system and list candidate ``f(X_k)`` values.

    Along an underdetermined solution space the candidates are sampled at
    ``max_samples`` points of the first null direction that moves the value.
    """
    p, D = config.p, config.block_size - 1
    by_n = {r.n: r for r in reports}
    partition = partition_by_tags(reports)
    eval_rows = {k: vandermonde(config.field, [config.omegas[k - 1]], D).row(0) for k in config.honest}
    groups = []
    for members in partition.groups:
        reps = [by_n[n] for n in members]
        Q = vandermonde(config.field, [r.alpha for r in reps], D)
        sols = [solve(Q, [r.result[c] for r in reps]) for c in range(config.message_dim)]
        if any(not isinstance(s, (Unique, Underdetermined)) for s in sols):
            groups.append(GroupAnalysis(tuple(members), -1, {k: [] for k in config.honest}))
            continue
        dim = sols[0].dimension if isinstance(sols[0], Underdetermined) else 0
        cands = {}
        for k, row in eval_rows.items():
            base = tuple(
                sum(a * b for a, b in zip(row, s.x if isinstance(s, Unique) else s.particular)) % p
                for s in sols
            )
            step = 0
            if dim:
                for j in range(dim):
                    step = sum(a * b for a, b in zip(row, sols[0].null_basis.row(j))) % p
                    if step:
                        break
            if step:
                values = {tuple((b + t * step) % p for b in base) for t in range(min(max_samples, p))}
            else:
                values = {base}
            cands[k] = sorted(values)
        groups.append(GroupAnalysis(tuple(members), dim, cands))
    non_unique = {k: any(len(g.candidates[k]) > 1 for g in groups) for k in config.honest}
    return AmbiguityReport(groups, non_unique)


# ---------------------------------------------------------------------------
# threshold search


@dataclass(frozen=True)
class ThresholdRow:
    t: int
    trials: int
    failures: int
    behavior_class: str

    @property
    def failure_rate(self) -> float:
        return self.failures / self.trials if self.trials else 0.0


@dataclass
class ThresholdResult:
    rows: list
    t_hat: int | None  # smallest tested t with zero failures
    t_star: int
    extra: dict = dc_field(default_factory=dict)

    def row_for(self, t: int) -> ThresholdRow:
        return next(r for r in self.rows if r.t == t)


def _subsets(N: int, t: int, policy: str, rng: random.Random):
    if policy == "all":
        return itertools.combinations(range(1, N + 1), t)
    if policy.startswith("sample:"):
        n = int(policy.split(":", 1)[1])
        if n >= math.comb(N, t):
            return itertools.combinations(range(1, N + 1), t)
        return [tuple(sorted(rng.sample(range(1, N + 1), t))) for _ in range(n)]
    raise ValueError(f"unknown subset policy {policy!r}")


def _is_correct(outcomes: dict, truth: dict) -> bool:
    return all(isinstance(o, Recovered) and o.value == truth[k] for k, o in outcomes.items())


def _threshold_chunk(args) -> dict:
    config, behaviors, offset, trials, ts, policy, seed = args
    failures = {t: 0 for t in ts}
    counts = {t: 0 for t in ts}
    for trial in range(trials):
        data = sample_owner_data(config, random.Random(f"data:{seed}:{trial}"))
        truth = true_values(config, data)
        for b_index, behavior in enumerate(behaviors, offset):
            by_n = {r.n: r for r in run_round(config, data, behavior, TagMode.ORACLE)}
            rng = random.Random(f"subsets:{seed}:{trial}:{b_index}")
            for t in ts:
                for subset in _subsets(config.N, t, policy, rng):
                    reps = [by_n[n] for n in subset]
                    out = _decode_partition(config, by_n, partition_by_tags(reps), config.honest)
                    counts[t] += 1
                    if not _is_correct(out, truth):
                        failures[t] += 1
    return {"failures": failures, "counts": counts}


def threshold_search(
    config: VersConfig,
    behaviors: Sequence[AdversarialBehavior],
    trials: int = 1,
    *,
    t_values: Sequence[int] | None = None,
    subset_policy: str = "all",
    behavior_class: str = "custom",
    seed: int | None = None,
    jobs: int = 1,
) -> ThresholdResult:
    """Count decoding failures per subset size ``t`` over behaviors, subsets and random data.

    A case fails unless every honest owner is ``Recovered`` with the true value.
    Results are independent of ``jobs``.
    """
    seed = config.seed if seed is None else seed
    ts = list(t_values) if t_values is not None else list(range(config.block_size, config.N + 1))
    behaviors = list(behaviors)
    jobs = max(1, min(jobs, len(behaviors)))
    size = -(-len(behaviors) // jobs)
    tasks = [
        (config, behaviors[i:i + size], i, trials, ts, subset_policy, seed)
        for i in range(0, len(behaviors), size)
    ]
    if jobs == 1:
        parts = [_threshold_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_threshold_chunk, tasks))
    rows = []
    for t in ts:
        rows.append(ThresholdRow(
            t,
            sum(part["counts"][t] for part in parts),
            sum(part["failures"][t] for part in parts),
            behavior_class,
        ))
    t_hat = next((r.t for r in rows if r.failures == 0 and r.trials > 0), None)
    return ThresholdResult(rows, t_hat, config.t_star)
