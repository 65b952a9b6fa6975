"""
Empirical recovery threshold
============================

d=2, K=3, one adversary with two versions, N=10 workers over GF(97).
Every one of the 2^10 ways to hand versions to workers is tried.
"""

import os
import random

from vers.config import VersConfig
from vers.decode import threshold_search
from vers.protocol import behavior_family

cfg = VersConfig.create(97, K=3, N=10, adversaries=[1], v=2, f=(0, 0, 1))
behaviors = behavior_family(cfg, "exhaustive", random.Random(0))
print(len(behaviors), "behaviors; predicted threshold", cfg.t_star)

res = threshold_search(cfg, behaviors, trials=2, seed=1, jobs=os.cpu_count() or 1)
for row in res.rows:
    print(f"t={row.t:2d}  failures {row.failures:6d} / {row.trials}")
print("first t without failures:", res.t_hat)

# no adversary: the threshold drops to d(K-1)+1
base = VersConfig.create(97, K=3, N=8, f=(0, 0, 1))
res = threshold_search(base, behavior_family(base, "honest", random.Random(0)), trials=5, seed=1)
print("beta=0 threshold:", res.t_hat, "expected", base.block_size)
