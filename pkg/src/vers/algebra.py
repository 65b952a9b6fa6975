"""Characteristic/relation matrices of a Vers system and block-permutation analysis.

Variables are pairs ``(owner, version)``; honest owners always carry version
0, adversarial owners versions ``1..v``.  A monomial is a sorted tuple of
``((owner, version), exponent)`` pairs.

Orders are fixed once per analysis:

* version vectors: lexicographic on the adversarial positions;
* monomials: by degree (ascending over the degree set), then by number of
  owners involved, then by owner tuple, then by exponent pattern
  (descending), then by versions with the lowest-labelled owner varying
  fastest.  For ``K=3, A={1,2}, v=2, f=x^2`` this gives the reference
  13-column ordering.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import VersConfig
from .errors import InvalidConfig, TooLargeToEnumerate
from .field import FieldMatrix, PrimeField, hstack, left_null_space, matmul, rank, vstack
from .poly import Poly, TargetFunction, compose_expand, lagrange_interpolate

MAX_ENUMERABLE_BLOCKS = 8

VersionVector = tuple
Monomial = tuple


# ---------------------------------------------------------------------------
# version vectors and monomials


def enumerate_version_vectors(K: int, adversaries: Iterable[int], v: int) -> list[VersionVector]:
    """All ``v**beta`` version vectors, lexicographic on the adversarial positions."""
    adv = sorted(set(adversaries))
    if len(adv) >= K:
        raise InvalidConfig(f"need beta < K, got beta={len(adv)}, K={K}")
    if v < 1:
        raise InvalidConfig("v must be >= 1")
    out = []
    for versions in itertools.product(range(1, v + 1), repeat=len(adv)):
        vec = [0] * K
        for owner, ver in zip(adv, versions):
            vec[owner - 1] = ver
        out.append(tuple(vec))
    return out


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative ints summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def monomial_vector(K: int, adversaries: Iterable[int], v: int, degree_set: Iterable[int]) -> list[Monomial]:
    adv = set(adversaries)
    degrees = sorted(set(degree_set))
    if not degrees:
        raise ValueError("degree set must be nonempty")
    out: list[Monomial] = []
    for e in degrees:
        patterns = []
        for exps in _compositions(e, K):
            support = tuple(k + 1 for k, x in enumerate(exps) if x)
            patterns.append((len(support), support, tuple(-x for x in exps), exps))
        patterns.sort()
        for _, support, _, exps in patterns:
            adv_in = [k for k in support if k in adv]
            # reversed product: lowest-labelled adversary varies fastest
            for rev in itertools.product(range(1, v + 1), repeat=len(adv_in)):
                versions = dict(zip(adv_in, reversed(rev)))
                out.append(tuple(((k, versions.get(k, 0)), exps[k - 1]) for k in support))
    return out


def monomial_vector_length(K: int, beta: int, v: int, degree_set: Iterable[int]) -> int:
    """Closed-form count of monomials (honest-only plus all adversarial-version mixes)."""
    total = 0
    for e in set(degree_set):
        for m in range(min(e, beta) + 1):
            total += math.comb(beta, m) * math.comb(K - beta - 1 + e, e - m) * v**m
    return total


def monomial_degree(mono: Monomial) -> int:
    return sum(exp for _, exp in mono)


def monomial_value(mono: Monomial, messages: Sequence, p: int) -> int:
    """Evaluate ``mono`` on concrete values; see :func:`coefficient_vector` for ``messages``."""
    acc = 1
    for (owner, ver), exp in mono:
        x = messages[owner - 1] if ver == 0 else messages[owner - 1][ver - 1]
        acc = acc * pow(x, exp, p) % p
    return acc


def monomial_to_json(mono: Monomial) -> list[dict]:
    return [{"owner": o, "version": ver, "exp": e} for (o, ver), e in mono]


def monomial_str(mono: Monomial) -> str:
    if not mono:
        return "1"
    parts = []
    for (o, ver), e in mono:
        s = f"X{o}" if ver == 0 else f"X{o}^({ver})"
        parts.append(s if e == 1 else f"{s}**{e}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# coefficient vector (numeric path)


def _check_messages(config: VersConfig, messages: Sequence) -> None:
    if len(messages) != config.K:
        raise ValueError("one entry per owner required")
    for k in range(1, config.K + 1):
        m = messages[k - 1]
        if k in config.adversaries:
            if len(m) != config.v:
                raise ValueError(f"owner {k} is adversarial: needs {config.v} versions")
        elif not isinstance(m, int):
            raise ValueError(f"owner {k} is honest: needs a single value")


def coefficient_subvector(config: VersConfig, vv: VersionVector, messages: Sequence) -> list[int]:
    """Descending coefficients of ``f(q(z))`` for the messages selected by ``vv``."""
    received = [
        messages[k - 1] if vv[k - 1] == 0 else messages[k - 1][vv[k - 1] - 1]
        for k in range(1, config.K + 1)
    ]
    q = lagrange_interpolate(config.field, list(zip(config.omegas, received)))
    return compose_expand(config.f, q).descending(config.block_size)


def coefficient_vector(config: VersConfig, messages: Sequence) -> list[int]:
    """Stacked coefficient sub-vectors, one per version vector.

    ``messages[k-1]`` is an int for honest owner ``k`` and a length-``v``
    sequence (versions ``1..v``) for adversarial owner ``k``.
    """
    _check_messages(config, messages)
    out: list[int] = []
    for vv in enumerate_version_vectors(config.K, config.adversaries, config.v):
        out.extend(coefficient_subvector(config, vv, messages))
    return out


# ---------------------------------------------------------------------------
# symbolic expansion


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for var, e in b:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items()))


def _sym_mul(a: list[dict], b: list[dict], p: int) -> list[dict]:
    out = [dict() for _ in range(len(a) + len(b) - 1)]
    for i, da in enumerate(a):
        for j, db in enumerate(b):
            tgt = out[i + j]
            for ma, ca in da.items():
                for mb, cb in db.items():
                    m = _mono_mul(ma, mb)
                    tgt[m] = (tgt.get(m, 0) + ca * cb) % p
    return out


def _sym_add_const(a: list[dict], c: int, p: int) -> list[dict]:
    out = [dict(d) for d in a] or [dict()]
    out[0][()] = (out[0].get((), 0) + c) % p
    return out


def _lagrange_basis(field: PrimeField, omegas: Sequence[int], k: int) -> Poly:
    p = field.p
    basis = Poly(field, (1,))
    den = 1
    for j, wj in enumerate(omegas):
        if j != k:
            basis = basis * Poly(field, (-wj, 1))
            den = den * (omegas[k] - wj) % p
    return basis * pow(den, -1, p)


def symbolic_expansion(config: VersConfig, vv: VersionVector) -> list[dict]:
    """``f(q(z))`` with messages as formal variables: list over powers of z of ``{monomial: coef}``."""
    p = config.p
    bases = [_lagrange_basis(config.field, config.omegas, k) for k in range(config.K)]
    width = max(len(b.coeffs) for b in bases)
    q: list[dict] = [dict() for _ in range(width)]
    for k, b in enumerate(bases):
        var = ((k + 1, vv[k]), 1)
        for i, c in enumerate(b.coeffs):
            if c:
                q[i][(var,)] = c
    acc: list[dict] = [dict()]
    for c in reversed(config.f.poly.coeffs):
        acc = _sym_add_const(_sym_mul(acc, q, p), c, p)
    return acc


@dataclass(frozen=True)
class CharacteristicMatrix:
    """``M`` with ``U = M X``; one row block of height ``block_size`` per version vector."""

    matrix: FieldMatrix
    version_vectors: tuple
    monomials: tuple
    block_size: int

    @property
    def num_blocks(self) -> int:
        return len(self.version_vectors)

    def block(self, i: int) -> FieldMatrix:
        b = self.block_size
        return self.matrix.submatrix(rows=range(i * b, (i + 1) * b))

    def block_of(self, vv: VersionVector) -> int:
        return self.version_vectors.index(tuple(vv))

    def monomial_values(self, messages: Sequence) -> list[int]:
        p = self.matrix.field.p
        return [monomial_value(m, messages, p) for m in self.monomials]

    def to_json(self) -> dict:
        return {
            **self.matrix.to_json(),
            "block_size": self.block_size,
            "version_vectors": [list(vv) for vv in self.version_vectors],
            "monomials": [monomial_to_json(m) for m in self.monomials],
        }


def characteristic_matrix(config: VersConfig) -> CharacteristicMatrix:
    vvs = enumerate_version_vectors(config.K, config.adversaries, config.v)
    monos = monomial_vector(config.K, config.adversaries, config.v, config.f.degree_set)
    index = {m: j for j, m in enumerate(monos)}
    bs = config.block_size
    rows = []
    for vv in vvs:
        expansion = symbolic_expansion(config, vv)
        expansion += [dict() for _ in range(bs - len(expansion))]
        for power in range(bs - 1, -1, -1):
            row = [0] * len(monos)
            for mono, c in expansion[power].items():
                if c:
                    row[index[mono]] = c
            rows.append(row)
    matrix = FieldMatrix.from_rows(config.field, rows, len(monos))
    return CharacteristicMatrix(matrix, tuple(vvs), tuple(monos), bs)


# ---------------------------------------------------------------------------
# relation matrix and permutations


@dataclass(frozen=True)
class RelationMatrix:
    """Basis of the left null space of ``M``, split into column blocks."""

    matrix: FieldMatrix
    block_size: int
    num_blocks: int

    def block(self, i: int) -> FieldMatrix:
        b = self.block_size
        return self.matrix.submatrix(cols=range(i * b, (i + 1) * b))

    def to_json(self) -> dict:
        return {**self.matrix.to_json(), "block_size": self.block_size, "num_blocks": self.num_blocks}


def relation_matrix(M: CharacteristicMatrix) -> RelationMatrix:
    return RelationMatrix(left_null_space(M.matrix), M.block_size, M.num_blocks)


def apply_block_permutation(P: RelationMatrix, perm: Sequence[int]) -> FieldMatrix:
    """Reorder column blocks: block ``i`` of the result is block ``perm[i]`` of ``P`` (0-based)."""
    if sorted(perm) != list(range(P.num_blocks)):
        raise ValueError(f"not a permutation of 0..{P.num_blocks - 1}: {perm}")
    field = P.matrix.field
    if P.matrix.rows == 0:
        return P.matrix
    return hstack(field, [P.block(j) for j in perm])


def is_effective(P: RelationMatrix, M: CharacteristicMatrix, perm: Sequence[int]) -> bool:
    return not matmul(apply_block_permutation(P, perm), M.matrix).is_zero()


def is_product_permutation(perm: Sequence[int], version_vectors: Sequence[VersionVector], adversaries: Iterable[int]) -> bool:
    """Whether ``perm`` permutes versions independently per adversary.

    True iff there are bijections ``pi_a`` on ``1..v`` (one per adversary ``a``)
    such that ``version_vectors[perm[i]][a] == pi_a(version_vectors[i][a])``.
    """
    for a in adversaries:
        mapping: dict[int, int] = {}
        for i, j in enumerate(perm):
            src, dst = version_vectors[i][a - 1], version_vectors[j][a - 1]
            if mapping.setdefault(src, dst) != dst:
                return False
        if len(set(mapping.values())) != len(mapping):
            return False
    return True


def _block_products(P: RelationMatrix, M: CharacteristicMatrix) -> np.ndarray:
    """``B[a, i] = P_a @ M_i`` as an int64 array of shape (g, g, rows(P), cols(M))."""
    g = M.num_blocks
    r, c = P.matrix.rows, M.matrix.cols
    out = np.zeros((g, g, r, c), dtype=np.int64)
    if r == 0:
        return out
    p_blocks = [P.block(a) for a in range(g)]
    m_blocks = [M.block(i) for i in range(g)]
    for a in range(g):
        for i in range(g):
            out[a, i] = np.array(matmul(p_blocks[a], m_blocks[i]).to_rows(), dtype=np.int64).reshape(r, c)
    return out


@dataclass(frozen=True)
class PermutationRecord:
    perm: tuple
    effective: bool
    product_form: bool

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "effective": self.effective, "product_form": self.product_form}


def classify_permutations(P: RelationMatrix, M: CharacteristicMatrix, adversaries: Iterable[int]) -> list[PermutationRecord]:
    """Every block permutation with its effectiveness and product-form flag."""
    g = M.num_blocks
    if g > MAX_ENUMERABLE_BLOCKS:
        raise TooLargeToEnumerate(f"{g}! permutations exceeds the cap ({MAX_ENUMERABLE_BLOCKS} blocks)")
    adv = sorted(set(adversaries))
    p = M.matrix.field.p
    B = _block_products(P, M)
    idx = np.arange(g)
    out = []
    for perm in itertools.permutations(range(g)):
        total = B[list(perm), idx].sum(axis=0) % p
        out.append(PermutationRecord(perm, bool(total.any()), is_product_permutation(perm, M.version_vectors, adv)))
    return out


def count_non_effective(P: RelationMatrix, M: CharacteristicMatrix) -> int:
    adv = {k + 1 for k, x in enumerate(M.version_vectors[0]) if x}
    return sum(not r.effective for r in classify_permutations(P, M, adv))


def row_span_contains(P: FieldMatrix, Q: FieldMatrix) -> bool:
    """Whether every row of ``Q`` lies in the row span of ``P``."""
    if Q.rows == 0:
        return True
    if P.rows == 0:
        return Q.is_zero()
    return rank(vstack(P.field, [P, Q])) == rank(P)


def analyze(config: VersConfig) -> tuple[CharacteristicMatrix, RelationMatrix]:
    M = characteristic_matrix(config)
    return M, relation_matrix(M)
