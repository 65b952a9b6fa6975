"""
One worker short of the threshold
=================================

The adversary splits the first 8 workers into two tag groups of 4.  A group of
4 leaves the degree-4 polynomial one equation short, so the value at an owner
point is not pinned down.
"""

import random

from vers.config import VersConfig
from vers.decode import ambiguity_analyze, decode_all
from vers.protocol import build_converse_behavior, converse_covered_workers, run_round, sample_owner_data, true_values

cfg = VersConfig.create(97, K=3, N=10, adversaries=[1], v=2, f=(0, 0, 1))
behavior = build_converse_behavior(cfg)
data = sample_owner_data(cfg, random.Random(3))
reports = run_round(cfg, data, behavior)
chosen = [reports[n - 1] for n in converse_covered_workers(cfg)]

print("decoder:", decode_all(cfg, chosen))

report = ambiguity_analyze(cfg, chosen)
truth = true_values(cfg, data)
for g in report.groups:
    print(f"group {g.workers}: solution space dimension {g.dimension}")
    for k, cands in g.candidates.items():
        print(f"  owner {k}: {len(cands)} sampled candidates, truth among them: {truth[k] in cands}")

# one more worker from the tail joins the first group and it decodes
print("with worker 9:", decode_all(cfg, chosen + [reports[8]]))
