"""Monte Carlo vs closed forms: the three ensemble experiments in miniature.

    python3 demos/random_matrix_lab.py

Smaller sample counts than the acceptance runs, so it finishes in seconds;
the printed deviations are what the full-size runs drive toward zero.
"""

import numpy as np

from entrack import boundaries, rmt

THREADS = 4

# --- average entropy law -----------------------------------------------------
print("mean entropy of random reduced states vs ln a - a/2b")
for beta in (64, 128, 256):
    r = rmt.page_mc(64, beta, samples=20, seed=1, threads=THREADS)
    print(f"  alpha=64 beta={beta}: mc {r.mean:.5f}  law {r.prediction:.5f}  "
          f"stderr {r.stderr:.5f}")

# --- spectral density --------------------------------------------------------
print("\npooled eigenvalue distribution vs the limiting density (KS distance)")
for lam in (0.25, 1.0):
    cfg = rmt.EnsembleConfig(512, round(512 / lam), 0.0, 1.0, samples=2, seed=2)
    ks = rmt.mpd_ks(rmt.sample_wishart(cfg, threads=THREADS), 1.0, lam)
    print(f"  ratio {lam:4.2f}: KS = {ks:.5f}")

# --- off-center ensembles ----------------------------------------------------
# Shifting every entry mean by gamma plants a rank-one spike; once the spike
# clears the bulk edge the top eigenvalue tracks alpha * gamma^2.
print("\nmean dominant eigenvalue vs max(alpha gamma^2, bulk edge)")
sweep = rmt.dominant_sweep(64, 128, np.array([0.0, 0.5, 1.0, 1.5]),
                           samples=200, seed=3, threads=THREADS)
for r in sweep:
    print(f"  gamma={r.gamma:4.2f}: mc {r.mean_lambda0:8.3f}  "
          f"law {r.prediction:8.3f}  stderr {r.stderr:.3f}")

# --- conditional means -------------------------------------------------------
# Bin random states by their dominant eigenvalue; within each bin the mean
# entropy and mean gap sit on the flexible curves.
print("\nbinned entropy/gap vs the flexible curves (alpha=beta=48)")
stats = rmt.sample_rho_stats(48, 48, samples=1500, seed=4, threads=THREADS)
for row in rmt.conditional_bins(stats, bins=8, min_count=25):
    print(f"  lam0~{row['center']:.4f} n={row['count']:4d}  "
          f"E {row['mean_entropy']:.4f} vs {row['flexible_E']:.4f}   "
          f"gap {row['mean_gap']:.4f} vs {row['flexible_gap']:.4f}")
