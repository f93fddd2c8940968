"""Numeric audit of the trigonometric inequality behind the area formula.

The hull of a complex-base attractor has boundary length B = 2(n-1)/(r-1)
and area A = (n-1)^2/(r^2-1) * sum_{v>0} |sin(v phi)| r^-v.  Isoperimetry
(A <= B^2 / 4 pi among planar convex bodies) then forces

    sum_{j>0} |sin(j phi)| r^-j  <=  (r + 1) / (pi (r - 1))

for every r > 1 and every angle phi.  The audit sweeps a dense (r, phi)
grid and reports the smallest slack; it should never go measurably
negative, and it gets tight as r -> 1.

Run:  python3 demos/04_inequality_audit.py
"""

import numpy as np

import fractalhull as fh

rs, phis, gaps = fh.isodiametric_audit(r_count=60, phi_count=720)

print(f"audited {gaps.size} (r, phi) pairs")
print(f"min gap: {gaps.min():.6g}   max gap: {gaps.max():.6g}")

i, j = np.unravel_index(np.argmin(gaps), gaps.shape)
print(f"tightest at r = {rs[i]:.4f}, phi = {phis[j]:.4f}")

print("\nworst slack per r (the inequality saturates as r -> 1):")
for idx in (0, 4, 9, 19, 39, 59):
    row = gaps[idx]
    print(f"  r = {rs[idx]:6.3f}   min over phi = {row.min():10.6f}")

assert gaps.min() >= -1e-12, "inequality audit failed"
print("\naudit passed: no gap below -1e-12")
