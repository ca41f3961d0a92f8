"""The two-sided subadditivity sandwich for (X + Y)^q, q in [1, 2].

The lower bound is constructive and always holds. The published upper
correction 2*(lambda_1 - lambda_n)^q fails already for scalars (x = y = 1,
q = 2 gives upper bound 2 against (x+y)^q = 4); the variant derived from the
block argument, 2*lambda_1^q, holds on every random trial.
"""

import numpy as np

import superquad as sq

print("scalar counterexample to the published correction (x = y = 1, q = 2):")
rep = sq.subadditivity_sandwich([[1.0]], [[1.0]], 2, variant="paper")
print("  upper bound =", rep.upper[0, 0], " vs (x+y)^q =", 4.0,
      " -> verdict", rep.upper_verdict.passed)
rep = sq.subadditivity_sandwich([[1.0]], [[1.0]], 2, variant="derived")
print("  derived correction 2*lambda_1^q = 8: upper bound =", rep.upper[0, 0],
      " -> verdict", rep.upper_verdict.passed)
print()

print("random 4x4 trial, q = 1.5, both variants side by side:")
x = sq.random_psd(4, 11, 8.0)
y = sq.random_psd(4, 12, 8.0)
rep = sq.subadditivity_sandwich(x, y, 1.5, variant="derived")
print("  lower margin          =", f"{rep.lower_verdict.margin: .4e}")
print("  upper margin (derived)=", f"{rep.ingredients['upper_margin_derived']: .4e}")
print("  upper margin (paper)  =", f"{rep.ingredients['upper_margin_paper']: .4e}")
print("  witnesses orthogonal within",
      max(np.linalg.norm(w.T @ w - np.eye(4)) for w in (rep.u1, rep.u2, rep.v1, rep.v2)))
print()

print("failure rate of the published form over 200 random pairs:")
fails = 0
for i in range(200):
    n = int(np.random.default_rng(3 * i).integers(1, 6))
    x = sq.random_psd(n, 2 * i, 10.0)
    y = sq.random_psd(n, 2 * i + 1, 10.0)
    if np.linalg.eigvalsh(x + y)[0] < 1e-10:
        continue
    r = sq.subadditivity_sandwich(x, y, 1.75, variant="paper")
    scale = max(1.0, np.linalg.norm(x + y, 2) ** 1.75)
    fails += r.upper_verdict.margin / scale < -1e-8
print(f"  {fails} / 200 trials violate the published correction")
