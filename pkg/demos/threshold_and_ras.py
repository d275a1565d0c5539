#!/usr/bin/env python3
"""Exact threshold decisions and the sub-exhaustive approximation scheme.

The threshold decider walks the branching tree depth-first and never
visits more than threshold+1 nodes, so deciding "is the count at most s"
costs O(s) tree probes regardless of the true count.  The approximation
scheme uses it to return small counts exactly and falls back to the
absolute-error estimator above the cutoff, where the radius is below
count / k by construction.
"""
import numpy as np

from totpcount import (
    DnfFormula,
    ExactCount,
    count_sat,
    count_up_to,
    dnf_instance,
    ras,
)
from totpcount.generate import random_dnf

rng = np.random.default_rng(5)

print("=== threshold decisions on a random 8-variable DNF ===")
phi = random_dnf(rng, 8, 4)
truth = count_sat(phi)
print(f"true count: {truth}")
for threshold in (0, truth // 2, truth, truth + 10):
    outcome = count_up_to(dnf_instance(phi), threshold)
    if isinstance(outcome, ExactCount):
        print(f"  threshold {threshold:>4}: exact value {outcome.value} "
              f"({outcome.nodes_visited} nodes visited)")
    else:
        print(f"  threshold {threshold:>4}: exceeds "
              f"({outcome.nodes_visited} nodes visited, bound {threshold + 1})")

print()
print("=== relative (1 +- 1/k) approximation, k = 4 ===")
k, beta = 4.0, 1 / 3
sparse = DnfFormula(9, ((1, 2, 3, 4),))  # 2^5 = 32 solutions: below the cutoff
report = ras(dnf_instance(sparse), k, beta, delta=0.2, seed=1, transport="exact")
print(f"  sparse formula: mode={report.mode}, value={report.size_estimate:.0f} "
      f"(truth {count_sat(sparse)})")

dense = DnfFormula(9, ((1,), (-1, 2), (-2, 3)))  # most assignments accepted
truth = count_sat(dense)
report = ras(dnf_instance(dense), k, beta, delta=0.2, seed=1, transport="exact")
rel = abs(report.size_estimate - truth) / truth
print(f"  dense formula:  mode={report.mode}, value={report.size_estimate:.1f} "
      f"(truth {truth}, relative error {rel:.3f}, bound {1 / k})")
