"""One round of the Vers workflow: distribution, local encoding, evaluation, tagging.

Messages are vectors of ``config.message_dim`` field elements (tuples of ints).
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .algebra import enumerate_version_vectors
from .config import VersConfig
from .errors import InvalidBehavior, InvalidConfig
from .poly import evaluate, lagrange_weights

Message = tuple  # message_dim ints


@dataclass(frozen=True)
class OwnerData:
    """Honest values ``honest[k]`` and adversarial version tables ``versions[k][i-1]``."""

    honest: dict
    versions: dict

    def to_json(self) -> dict:
        return {
            "honest": {str(k): list(x) for k, x in sorted(self.honest.items())},
            "versions": {str(k): [list(x) for x in vs] for k, vs in sorted(self.versions.items())},
        }


def sample_owner_data(config: VersConfig, rng: random.Random, adversarial_values: dict | None = None) -> OwnerData:
    """Uniform i.i.d. honest messages; adversarial versions uniform unless supplied.

    ``adversarial_values`` maps an adversary label to its ``v`` chosen messages.
    """
    p, s = config.p, config.message_dim
    honest, versions = {}, {}
    for k in range(1, config.K + 1):
        if k in config.adversaries:
            continue
        honest[k] = tuple(rng.randrange(p) for _ in range(s))
    for k in config.adversary_list:
        if adversarial_values and k in adversarial_values:
            vs = tuple(tuple(int(c) % p for c in x) for x in adversarial_values[k])
            if len(vs) != config.v or any(len(x) != s for x in vs):
                raise InvalidConfig(f"adversary {k} needs {config.v} messages of length {s}")
        else:
            vs = tuple(tuple(rng.randrange(p) for _ in range(s)) for _ in range(config.v))
        versions[k] = vs
    return OwnerData(honest, versions)


@dataclass(frozen=True)
class AdversarialBehavior:
    """``assignment[n-1]`` is the version vector observed by worker ``n``."""

    assignment: tuple

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(tuple(int(x) for x in vv) for vv in self.assignment))

    def validate(self, config: VersConfig) -> None:
        if len(self.assignment) != config.N:
            raise InvalidBehavior(f"need {config.N} version vectors, got {len(self.assignment)}")
        for n, vv in enumerate(self.assignment, 1):
            if len(vv) != config.K:
                raise InvalidBehavior(f"worker {n}: version vector length {len(vv)} != K")
            for k, x in enumerate(vv, 1):
                if k in config.adversaries:
                    if not 1 <= x <= config.v:
                        raise InvalidBehavior(f"worker {n}: version {x} of owner {k} outside 1..{config.v}")
                elif x != 0:
                    raise InvalidBehavior(f"worker {n}: honest owner {k} must have version 0")

    def to_json(self) -> list:
        return [list(vv) for vv in self.assignment]


def honest_behavior(config: VersConfig) -> AdversarialBehavior:
    """Every adversary sends version 1 everywhere."""
    vv = enumerate_version_vectors(config.K, config.adversaries, config.v)[0]
    return AdversarialBehavior((vv,) * config.N)


def random_behavior(config: VersConfig, rng: random.Random) -> AdversarialBehavior:
    vvs = enumerate_version_vectors(config.K, config.adversaries, config.v)
    return AdversarialBehavior(tuple(rng.choice(vvs) for _ in range(config.N)))


def all_behaviors(config: VersConfig) -> Iterator[AdversarialBehavior]:
    """All ``(v**beta)**N`` behaviors, in lexicographic order."""
    vvs = enumerate_version_vectors(config.K, config.adversaries, config.v)
    for combo in itertools.product(vvs, repeat=config.N):
        yield AdversarialBehavior(combo)


def build_converse_behavior(config: VersConfig) -> AdversarialBehavior:
    """Worst case: ``d(K-1)`` consecutive workers per version vector, rest on the first one."""
    vvs = enumerate_version_vectors(config.K, config.adversaries, config.v)
    group = config.d * (config.K - 1)
    covered = len(vvs) * group
    if config.N < covered:
        raise InvalidConfig(f"converse behavior needs N >= v^beta d(K-1) = {covered}, got N={config.N}")
    assignment = [vv for vv in vvs for _ in range(group)]
    assignment += [vvs[0]] * (config.N - covered)
    return AdversarialBehavior(tuple(assignment))


def converse_covered_workers(config: VersConfig) -> tuple:
    return tuple(range(1, config.num_versions * config.d * (config.K - 1) + 1))


EXHAUSTIVE_LIMIT = 2**20


def behavior_family(config: VersConfig, behavior_class: str, rng: random.Random, samples: int = 64) -> list[AdversarialBehavior]:
    """Behaviors to test for a named class.

    ``exhaustive`` enumerates everything when ``(v**beta)**N <= 2**20`` and
    otherwise falls back to the converse behavior plus ``samples`` random ones.
    """
    if behavior_class == "converse":
        return [build_converse_behavior(config)]
    if behavior_class == "random":
        return [random_behavior(config, rng) for _ in range(samples)]
    if behavior_class == "honest":
        return [honest_behavior(config)]
    if behavior_class == "exhaustive":
        if config.num_versions ** config.N <= EXHAUSTIVE_LIMIT:
            return list(all_behaviors(config))
        family = []
        if config.N >= config.t_star - 1:
            family.append(build_converse_behavior(config))
        family.extend(random_behavior(config, rng) for _ in range(samples))
        return family
    raise InvalidConfig(f"unknown behavior class {behavior_class!r}")


def distribute(config: VersConfig, owner_data: OwnerData, behavior: AdversarialBehavior) -> list[tuple]:
    """The K-tuple of messages each worker receives (index ``n-1`` for worker ``n``)."""
    behavior.validate(config)
    out = []
    for vv in behavior.assignment:
        received = []
        for k in range(1, config.K + 1):
            if k in config.adversaries:
                received.append(owner_data.versions[k][vv[k - 1] - 1])
            else:
                received.append(owner_data.honest[k])
        out.append(tuple(received))
    return out


@lru_cache(maxsize=1024)
def _encoding_coefficients(p: int, omegas: tuple, alpha: int) -> tuple:
    # alpha may coincide with an owner point: weights collapse to a unit vector
    if alpha in omegas:
        return tuple(int(w == alpha) for w in omegas)
    return lagrange_weights(p, omegas, alpha)


def encoding_coefficients(config: VersConfig, n: int) -> tuple:
    """``gamma_{k,n} = prod_{j != k} (alpha_n - omega_j) / (omega_k - omega_j)``."""
    return _encoding_coefficients(config.p, config.omegas, config.alphas[n - 1])


def lagrange_encode(p: int, omegas: Sequence[int], alpha: int, received: Sequence[Message]) -> Message:
    """Value at ``alpha`` of the interpolant through ``(omegas[k], received[k])``, coordinate-wise."""
    if len(received) != len(omegas):
        raise ValueError(f"expected {len(omegas)} messages, got {len(received)}")
    gammas = _encoding_coefficients(p, tuple(omegas), alpha % p)
    dim = len(received[0])
    return tuple(sum(g * x[c] for g, x in zip(gammas, received)) % p for c in range(dim))


def worker_encode(config: VersConfig, received: Sequence[Message], n: int) -> Message:
    """``W_n = sum_k gamma_{k,n} X_{k,n}``."""
    return lagrange_encode(config.p, config.omegas, config.alphas[n - 1], received)


def worker_compute(config: VersConfig, w: Message) -> Message:
    return tuple(evaluate(config.f.poly, x) for x in w)


class TagMode(str, enum.Enum):
    ORACLE = "oracle"
    FINGERPRINT = "fingerprint"


@dataclass(frozen=True)
class TagValue:
    """Oracle tags carry the flattened tuple itself; fingerprint tags one field element."""

    mode: TagMode
    value: object

    def to_json(self):
        return list(self.value) if self.mode is TagMode.ORACLE else self.value


def fingerprint(coords: Sequence[int], key: int, p: int) -> int:
    """Evaluate ``r**L + c_1 r**(L-1) + ... + c_L`` at ``r = key`` (``L = len(coords)``)."""
    acc = 1
    for c in coords:
        acc = (acc * key + c) % p
    return acc


@dataclass(frozen=True)
class CollisionStats:
    mode: TagMode
    trials: int
    collisions: int
    bound: float

    @property
    def rate(self) -> float:
        return self.collisions / self.trials if self.trials else 0.0

    @property
    def three_sigma_limit(self) -> float:
        """``trials*bound + 3 sigma`` for a binomial at the bound."""
        n, b = self.trials, min(self.bound, 1.0)
        return n * b + 3.0 * float(np.sqrt(n * b * (1.0 - b)))

    def to_json(self) -> dict:
        return {
            "mode": self.mode.value,
            "trials": self.trials,
            "collisions": self.collisions,
            "rate": self.rate,
            "bound": self.bound,
        }


def fingerprint_batch(coords: np.ndarray, keys: np.ndarray, p: int) -> np.ndarray:
    """Row-wise :func:`fingerprint`; needs ``p < 2**31`` so products fit in int64."""
    acc = np.ones(coords.shape[0], dtype=np.int64)
    for j in range(coords.shape[1]):
        acc = (acc * keys + coords[:, j]) % p
    return acc


def measure_tag_collisions(
    config: VersConfig,
    trials: int,
    mode: TagMode = TagMode.FINGERPRINT,
    seed: int | None = None,
    batch: int = 200_000,
) -> CollisionStats:
    """Monte Carlo tag collisions for pairs of received tuples that differ.

    Both tuples share the honest coordinates; the adversarial coordinates
    (all coordinates when there is no adversary) are drawn independently and
    without knowledge of the key, which is fresh and uniform for every pair.
    """
    mode = TagMode(mode)
    p, s, K = config.p, config.message_dim, config.K
    if p >= 2**31:
        raise InvalidConfig("batched fingerprints need p < 2**31")
    L = K * s
    free = [(k - 1) * s + c for k in (config.adversary_list or range(1, K + 1)) for c in range(s)]
    rng = np.random.default_rng(config.seed if seed is None else seed)
    collisions = 0
    done = 0
    while done < trials:
        b = min(batch, trials - done)
        first = rng.integers(0, p, size=(b, L), dtype=np.int64)
        second = first.copy()
        second[:, free] = rng.integers(0, p, size=(b, len(free)), dtype=np.int64)
        same = (first == second).all(axis=1)
        second[same, free[0]] = (second[same, free[0]] + 1) % p
        if mode is TagMode.ORACLE:
            collisions += int((first == second).all(axis=1).sum())
        else:
            keys = rng.integers(0, p, size=b, dtype=np.int64)
            collisions += int((fingerprint_batch(first, keys, p) == fingerprint_batch(second, keys, p)).sum())
        done += b
    bound = 0.0 if mode is TagMode.ORACLE else L / p
    return CollisionStats(mode, trials, collisions, bound)


def derive_tag_key(config: VersConfig) -> int:
    """Shared secret evaluation point, derived from the config seed."""
    return random.Random(f"tag-key:{config.seed}").randrange(config.p)


def worker_tag(config: VersConfig, received: Sequence[Message], mode: TagMode = TagMode.ORACLE, key: int | None = None) -> TagValue:
    flat = tuple(c for x in received for c in x)
    mode = TagMode(mode)
    if mode is TagMode.ORACLE:
        return TagValue(mode, flat)
    if key is None:
        raise ValueError("fingerprint tags need a key")
    return TagValue(mode, fingerprint(flat, key, config.p))


@dataclass(frozen=True)
class WorkerReport:
    n: int
    alpha: int
    result: tuple
    tag: TagValue

    def to_json(self) -> dict:
        return {"n": self.n, "alpha": self.alpha, "result": list(self.result), "tag": self.tag.to_json()}


def run_round(
    config: VersConfig,
    owner_data: OwnerData,
    behavior: AdversarialBehavior,
    tag_mode: TagMode = TagMode.ORACLE,
    tag_key: int | None = None,
) -> list[WorkerReport]:
    """Steps 1-5 of the workflow for all N workers, in worker order."""
    tag_mode = TagMode(tag_mode)
    if tag_mode is TagMode.FINGERPRINT and tag_key is None:
        tag_key = derive_tag_key(config)
    reports = []
    for n, received in enumerate(distribute(config, owner_data, behavior), 1):
        w = worker_encode(config, received, n)
        reports.append(
            WorkerReport(n, config.alphas[n - 1], worker_compute(config, w), worker_tag(config, received, tag_mode, tag_key))
        )
    return reports


def true_values(config: VersConfig, owner_data: OwnerData) -> dict:
    """``f(X_k)`` for every honest owner, computed directly."""
    return {k: worker_compute(config, x) for k, x in owner_data.honest.items()}


def round_transcript(
    config: VersConfig,
    behavior: AdversarialBehavior,
    reports: Sequence[WorkerReport],
    tag_mode: TagMode,
    tag_key: int | None = None,
    include_key: bool = False,
) -> dict:
    out = {
        "config": config.to_json(),
        "tag_mode": TagMode(tag_mode).value,
        "behavior": behavior.to_json(),
        "reports": [r.to_json() for r in reports],
    }
    if include_key and tag_key is not None:
        out["tag_key"] = tag_key
    return out
