"""A tour of one trajectory per algorithm family, printed as a table.

Run from the repository root:

    python3 demos/trajectory_tour.py

Each block simulates a small circuit, checkpoints the reduced-spectrum
measures, and prints (label, lambda0, entropy, gap) rows. The same data is
what `entrack <scenario> --out DIR` writes as trajectory.csv.
"""

import math

from entrack import boundaries
from entrack.scenarios import exact_cover, grover, primes, shor


def show(traj, keep=None):
    print(f"\n== {traj.scenario} ==")
    print(f"{'label':<22} {'lambda0':>10} {'entropy':>10} {'gap':>10}")
    for p in traj.points:
        if keep is not None and not keep(p):
            continue
        gap = f"{p.gap:10.4f}" if math.isfinite(p.gap) else f"{'inf':>10}"
        print(f"{p.label:<22} {p.lambda0:10.6f} {p.entropy:10.6f} {gap}")
    if traj.findings:
        print(f"   {len(traj.findings)} point(s) above the flexible curve")


# --- adiabatic sweep on a pinned 10-bit instance ---------------------------
# The ground state starts as a product (s=0, uniform) and ends as a product
# (s=1, the unique solution); entanglement rises and falls in between.
inst = exact_cover.load_pinned_instance("ec10_a")
traj = exact_cover.adiabatic_trajectory(inst, s_step=0.25, partitions=1, seed=3)
show(traj)
print(f"entropy peaks near s = {exact_cover.peak_entropy_s(traj)}")

# --- amplitude amplification on the same instance ---------------------------
# Checkpoints inside one iteration: the phase-flip entangles the search
# register with the clause ancillas, the uncompute disentangles them again.
traj = grover.grover_ec_trajectory(inst, seed=0, iterations=3)
show(traj, keep=lambda p: p.sequence <= 4 or p.sequence >= len(traj.points) - 2)
print(f"success probability after t={traj.results['iterations']} iterations "
      f"would be {traj.results['success_probability']:.4f} at full depth")

# --- semi-classical order finding -------------------------------------------
# Rounds classified against the two analytic spectrum families; the measured
# bits assemble the phase that reveals the order of 7 mod 15.
traj = shor.shor_trajectory(shor.ShorConfig(15, 7, seed=1))
show(traj)
r = traj.results
print(f"measured y={r['y']} -> order {r['order']} -> factors {r['factors']}")
print(f"entropy stays below e_half = {boundaries.shor_entropy_ceiling(4):.4f}")

# --- fixed-factor-count states ----------------------------------------------
traj = primes.prime_trajectory(10)
show(traj, keep=lambda p: p.label in ("P1", "U1", "P5", "U5", "P9", "U9"))
print(f"support sizes: {traj.results['support_sizes']}")
