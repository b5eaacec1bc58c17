"""Where trajectories are allowed to live: the bound curves side by side.

    python3 demos/boundary_gallery.py

Prints, for a grid of dominant eigenvalues at alpha=32, the hard lower and
upper entropy bounds plus the random-matrix conditional mean that typical
states actually follow. Everything here is closed-form; no sampling.
"""

import numpy as np

from entrack import boundaries

ALPHA = 32
BETA = 128

print(f"alpha={ALPHA} beta={BETA}   (entropies in nats, E_max = ln alpha = "
      f"{np.log(ALPHA):.4f})")
print(f"{'lambda0':>8} {'f1 (lower)':>11} {'exact upper':>12} "
      f"{'f3 (relaxed)':>13} {'flexible':>10} {'gap g1':>8} {'flex gap':>9}")

for lam in np.linspace(1.0 / ALPHA, 1.0, 12):
    f1 = boundaries.f1(lam)
    hi = boundaries.exact_upper(lam, ALPHA)
    f3 = boundaries.f3(lam, ALPHA)
    flex = boundaries.flexible_E(lam, ALPHA, BETA)
    g1 = boundaries.g1(lam) if lam < 1.0 else float("inf")
    fg = boundaries.flexible_gap(lam, ALPHA, BETA) if lam < 1.0 else float("inf")
    print(f"{lam:8.4f} {f1:11.4f} {hi:12.4f} {f3:13.4f} {flex:10.4f} "
          f"{g1:8.3f} {fg:9.3f}")

# The ordering f1 <= exact_upper <= f3 holds everywhere; the flexible curve
# threads between them, and its lambda0 -> 0 limit is the average-entropy law.
print(f"\nln a - a/2b at this shape: {boundaries.page_entropy(ALPHA, BETA):.6f}")
print(f"flexible curve at its left endpoint: "
      f"{boundaries.flexible_E(1.0 / ALPHA, ALPHA, BETA):.6f}")

# Renyi generalizations of the flexible curve, one column per degree.
print(f"\n{'lambda0':>8}" + "".join(f"  renyi d={d}" for d in range(1, 5)))
for lam in (0.1, 0.3, 0.5, 0.7, 0.9):
    row = "".join(f" {boundaries.renyi_flexible(lam, ALPHA, d):9.4f}" for d in range(1, 5))
    print(f"{lam:8.2f} {row}")

# Squared-singular-value density edges for a few aspect ratios: the support
# of the limiting spectrum, plus the point mass that appears past ratio 1.
print(f"\n{'ratio':>6} {'lo edge':>9} {'hi edge':>9} {'atom at 0':>10}")
for ratio in (0.25, 0.5, 1.0, 2.0, 4.0):
    lo, hi = boundaries.mpd_edges(1.0, ratio)
    print(f"{ratio:6.2f} {lo:9.4f} {hi:9.4f} {boundaries.mpd_atom(ratio):10.4f}")
