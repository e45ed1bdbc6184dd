"""Writes data/example_3class.csv: a synthetic three-group marker dataset.

Group sizes 34/75/142; values are non-negative (negatives clipped to 0, as
for background-subtracted log expression).
"""
import numpy as np

rng = np.random.default_rng(20240518)
groups = [(1, 34, 0.0, 0.30), (2, 75, 0.85, 0.48), (3, 142, 1.50, 0.75)]
rows = ["class,value"]
for label, n, mu, sd in groups:
    for v in np.clip(rng.normal(mu, sd, n), 0.0, None):
        rows.append(f"{label},{v:.4f}")
with open("data/example_3class.csv", "w") as f:
    f.write("\n".join(rows) + "\n")
