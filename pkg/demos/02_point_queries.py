"""Proximity queries against an attractor, with an honest error budget.

Testing whether a point is close to a fractal set sounds expensive; the
width function makes it cheap.  A single-direction test certifies "outside
the hull" immediately, and pulling the point back through inverse maps
turns that coarse test into a distance certificate: near1(x, l) == True
guarantees dist(x, attractor) <= l plus the (reported) width slack.

The demo fires probes at increasing distances from the twindragon and
compares the predicate against a brute-force nearest-sample oracle.

Run:  python3 demos/02_point_queries.py
"""

import numpy as np
from scipy.spatial import cKDTree

import fractalhull as fh

ifs = fh.complex_base_ifs(1 + 1j, 2)
w = fh.solve_width(ifs, n_grid=4096, tol=1e-6)
ctx = fh.build_context(ifs, w)
print(f"query base point x0 = ({ctx.x0[0]:g}, {ctx.x0[1]:g})")
print(f"hull circumradius     = {ctx.radius:.4f}")
print(f"excess constant bound = {ctx.c0_bound:.4f} ({ctx.c0_mode} mode)")
print(f"width slack           = {ctx.slack:.2e}")

# brute-force oracle: nearest distance to a dense sample of the attractor
cloud = fh.chaos_game_sample(ifs, 400_000, seed=5).points
tree = cKDTree(cloud)

rng = np.random.default_rng(12)
anchors = cloud[rng.integers(0, cloud.shape[0], size=9)]
offsets = np.geomspace(0.002, 0.5, 9)

print(f"\n{'true dist':>10} {'near1(0.01)':>12} {'near1(0.05)':>12} "
      f"{'near1(0.2)':>12} {'depth':>6}")
for anchor, delta in zip(anchors, offsets):
    ang = rng.uniform(0, 2 * np.pi)
    probe = anchor + delta * np.array([np.cos(ang), np.sin(ang)])
    dist = tree.query(probe)[0]
    answers = [fh.near1(ctx, probe, level) for level in (0.01, 0.05, 0.2)]
    print(f"{dist:10.4f} "
          + " ".join(f"{str(a.hit):>12}" for a in answers)
          + f" {answers[0].depth:6d}")

print("\nevery True above is a certificate: dist <= l + slack;")
print("False is only 'no certificate found at this budget'.")

# the pull-back hierarchy: deeper levels pin the point ever closer
anchor = cloud[123]
print(f"\nlevels of near(x, k) for an attractor point {np.round(anchor, 4)}:")
for k in (0, 2, 4, 8, 12):
    res = fh.near(ctx, anchor, k)
    bound = ctx.c0_bound * ifs.c ** k + ctx.slack
    print(f"  k={k:2d}  hit={res.hit}  implies dist <= {bound:.5f}")
