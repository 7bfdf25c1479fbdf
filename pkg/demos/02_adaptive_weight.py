#!/usr/bin/env python3
# How the diversity weight adapts.  Two signals drive it:
#   - score variability (CV): peaky relevance -> trust the scores,
#     lower the weight; flat relevance -> push diversity
#   - budget ratio rho = N/k: many candidates per slot -> more pressure
# A logistic blend on rho mixes the two and clips into the configured
# bounds.

import numpy as np

from rdmv import SelectionConfig
from rdmv.control import blend_lambda, blend_weight, lambda_bud, lambda_var

cfg = SelectionConfig()

print("variability component (decreasing in CV):")
for cv in (0.0, 0.25, 0.5, 1.0, 2.0, 5.0):
    print(f"  CV={cv:<5} lambda_var={lambda_var(cv, cfg):.4f}")

print("\nbudget component (saturating log in rho, capped at rho=8):")
for rho in (0.5, 1.0, 2.0, 4.0, 8.0, 56.25):
    print(f"  rho={rho:<6} lambda_bud={lambda_bud(rho, cfg):.4f}")

print("\nblended weight over a grid (rows: rho, cols: CV):")
cvs = (0.0, 0.5, 2.0)
print("  rho\\CV " + "".join(f"{cv:>8}" for cv in cvs))
for rho in (1.0, 2.0, 8.0, 56.25):
    w = blend_weight(rho)
    cells = "".join(
        f"{blend_lambda(rho, lambda_var(cv, cfg), lambda_bud(rho, cfg), cfg):>8.4f}"
        for cv in cvs
    )
    print(f"  {rho:<6}{cells}   (w={w:.3f})")

print("\nFor an hour-long video at 1 fps with k=64, rho = 56.25: the budget")
print("term saturates and the final weight sits at lambda_max regardless of CV.")
