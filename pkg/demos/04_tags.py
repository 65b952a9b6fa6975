"""
Tags
====

Oracle tags are the received tuple itself.  Fingerprint tags evaluate a keyed
polynomial at a secret point, so two different tuples collide with
probability at most K*s/p.
"""

from vers.config import VersConfig
from vers.protocol import TagMode, measure_tag_collisions

for p in (10007, 2**31 - 1):
    cfg = VersConfig.create(p, K=3, N=3, adversaries=[1], v=2)
    stats = measure_tag_collisions(cfg, 10**6, TagMode.FINGERPRINT, seed=11)
    print(f"p={p}: {stats.collisions} collisions in {stats.trials} pairs, "
          f"bound {stats.bound:.2e}, 3-sigma count limit {stats.three_sigma_limit:.1f}")

stats = measure_tag_collisions(cfg, 10**5, TagMode.ORACLE, seed=11)
print("oracle:", stats.collisions, "collisions")
