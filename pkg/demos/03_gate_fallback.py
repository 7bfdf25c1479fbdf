#!/usr/bin/env python3
# The relevance-aware gate.  When no frame clears the threshold the
# scores are treated as noise: the pipeline zeroes them and selects for
# coverage alone.  Two consequences are shown here: the mode switch at
# the boundary, and invariance of gated selections to the (unreliable)
# score values.

import numpy as np

from rdmv import plan_selection

rng = np.random.default_rng(7)
frames = rng.standard_normal((120, 12))

weak = np.clip(rng.uniform(0.05, 0.35, 120), 0.0, 1.0)   # max < 0.4
strong = weak.copy()
strong[40] = 0.40                                          # exactly at the threshold

for name, scores in (("weak alignment", weak), ("boundary score 0.40", strong)):
    plan, result = plan_selection(frames, scores, k=5)
    print(f"{name}: max={plan.gate.max_score:.2f} -> {plan.gate.mode}, "
          f"lambda={plan.lambda_final}")

# gated runs ignore the exact sub-threshold values entirely
picks = set()
for trial in range(5):
    noise = np.clip(rng.uniform(0.0, 0.39, 120), 0.0, 1.0)
    _, result = plan_selection(frames, noise, k=5)
    picks.add(result.indices)
print("\ndistinct gated selections across 5 random sub-threshold score vectors:",
      len(picks))
print("indices:", sorted(next(iter(picks))))
