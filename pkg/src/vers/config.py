"""System parameters shared by the protocol simulator and the algebraic toolkit."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidConfig
from .field import PrimeField
from .poly import TargetFunction


@dataclass(frozen=True)
class VersConfig:
    """Parameters of one Vers system.

    Owners and workers are labelled ``1..K`` and ``1..N``; ``adversaries`` holds
    owner labels.  ``omegas[k-1]`` is owner ``k``'s point, ``alphas[n-1]`` is
    worker ``n``'s point.
    """

    field: PrimeField
    K: int
    N: int
    adversaries: frozenset
    v: int
    f: TargetFunction
    omegas: tuple
    alphas: tuple
    message_dim: int = 1
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "adversaries", frozenset(int(a) for a in self.adversaries))
        object.__setattr__(self, "omegas", tuple(int(w) % self.field.p for w in self.omegas))
        object.__setattr__(self, "alphas", tuple(int(a) % self.field.p for a in self.alphas))
        if self.K < 1 or self.N < 1:
            raise InvalidConfig("K and N must be positive")
        if self.K > self.N:
            raise InvalidConfig(f"need K <= N, got K={self.K}, N={self.N}")
        if not self.adversaries <= set(range(1, self.K + 1)):
            raise InvalidConfig(f"adversaries {sorted(self.adversaries)} not within owners 1..{self.K}")
        if self.beta >= self.K:
            raise InvalidConfig(f"need beta < K, got beta={self.beta}, K={self.K}")
        if self.v < 1:
            raise InvalidConfig("v must be >= 1")
        if self.message_dim < 1:
            raise InvalidConfig("message_dim must be >= 1")
        if self.f.field.p != self.field.p:
            raise InvalidConfig("target function lives in a different field")
        if len(self.omegas) != self.K or len(self.alphas) != self.N:
            raise InvalidConfig("need K owner points and N worker points")
        pts = self.omegas + self.alphas
        if len(set(pts)) != len(pts):
            raise InvalidConfig("owner and worker points must be pairwise distinct")

    @classmethod
    def create(
        cls,
        p: int,
        K: int,
        N: int,
        adversaries: Iterable[int] = (),
        v: int = 1,
        f: Sequence[int] | TargetFunction = (0, 0, 1),
        *,
        omegas: Sequence[int] | None = None,
        alphas: Sequence[int] | None = None,
        randomize_points: bool = False,
        message_dim: int = 1,
        seed: int = 0,
    ) -> VersConfig:
        """Build a config with default points ``omega = 1..K``, ``alpha = K+1..K+N``.

        ``randomize_points`` draws distinct nonzero points from the field instead,
        seeded by ``seed``.  ``f`` is an ascending coefficient list or a
        :class:`TargetFunction`.
        """
        field = PrimeField(p)
        if K + N > p:
            raise InvalidConfig(f"field too small: need K + N <= p, got {K + N} > {p}")
        if not isinstance(f, TargetFunction):
            f = TargetFunction.from_coeffs(field, f)
        if randomize_points and (omegas is None or alphas is None):
            pts = random.Random(seed).sample(range(1, p), K + N)
            omegas = omegas if omegas is not None else pts[:K]
            alphas = alphas if alphas is not None else pts[K:]
        omegas = tuple(range(1, K + 1)) if omegas is None else tuple(omegas)
        alphas = tuple(range(K + 1, K + N + 1)) if alphas is None else tuple(alphas)
        return cls(field, K, N, frozenset(adversaries), v, f, omegas, alphas, message_dim, seed)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def beta(self) -> int:
        return len(self.adversaries)

    @property
    def d(self) -> int:
        return self.f.degree

    @property
    def honest(self) -> tuple:
        return tuple(k for k in range(1, self.K + 1) if k not in self.adversaries)

    @property
    def adversary_list(self) -> tuple:
        return tuple(sorted(self.adversaries))

    @property
    def block_size(self) -> int:
        """Length of one coefficient sub-vector, ``d(K-1) + 1``."""
        return self.d * (self.K - 1) + 1

    @property
    def num_versions(self) -> int:
        """Number of version vectors, ``v**beta``."""
        return self.v ** self.beta

    @property
    def t_star(self) -> int:
        return self.num_versions * self.d * (self.K - 1) + 1

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "K": self.K,
            "N": self.N,
            "adversaries": sorted(self.adversaries),
            "v": self.v,
            "f": list(self.f.poly.coeffs),
            "omegas": list(self.omegas),
            "alphas": list(self.alphas),
            "message_dim": self.message_dim,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, data: dict) -> VersConfig:
        return cls.create(
            int(data["p"]),
            int(data["K"]),
            int(data["N"]),
            data.get("adversaries", ()),
            int(data.get("v", 1)),
            data.get("f", (0, 0, 1)),
            omegas=data.get("omegas"),
            alphas=data.get("alphas"),
            randomize_points=bool(data.get("randomize_points", False)),
            message_dim=int(data.get("message_dim", 1)),
            seed=int(data.get("seed", 0)),
        )
