"""
Characteristic matrix of a small system
=======================================

Three owners, the first two adversarial with two versions each, f(x) = x^2.
"""

import random

from vers.algebra import (
    characteristic_matrix,
    classify_permutations,
    coefficient_vector,
    monomial_str,
    relation_matrix,
)
from vers.config import VersConfig
from vers.field import rank

cfg = VersConfig.create(10007, K=3, N=3, adversaries=[1, 2], v=2, f=(0, 0, 1))

# 13 monomials, 4 version vectors, blocks of d(K-1)+1 = 5 rows
M = characteristic_matrix(cfg)
print("monomials:", ", ".join(monomial_str(m) for m in M.monomials))
print("version vectors:", M.version_vectors)
print("shape", M.matrix.shape, "rank", rank(M.matrix))

# entries printed as small signed rationals are easier to read; show the first block
# simplest denominator wins, so map 4ths first, then halves, then integers
inv = {}
for den in (4, 2, 1):
    for num in range(-40, 41):
        inv[num * pow(den, -1, cfg.p) % cfg.p] = str(num) if den == 1 else f"{num}/{den}"
for row in M.block(0).to_rows():
    print(" ".join(f"{inv.get(x, x):>6}" for x in row))

# M turns monomial values into the stacked coefficients of f(q(z))
msgs = [[random.randrange(cfg.p) for _ in range(2)], [random.randrange(cfg.p) for _ in range(2)], 7]
assert M.matrix.matvec(M.monomial_values(msgs)) == coefficient_vector(cfg, msgs)

# relation matrix: left null space of M
P = relation_matrix(M)
print("relation matrix rows:", P.matrix.rows)

# block permutations that keep P^perm M = 0 are exactly the per-adversary relabelings
for rec in classify_permutations(P, M, cfg.adversaries):
    if not rec.effective:
        print("non-effective:", rec.perm, "product form:", rec.product_form)
