"""Semi-classical order finding on 2n+3 qubits with per-round checkpoints.

One control qubit is recycled through 2n rounds: Hadamard, controlled
modular multiply by a^(2^j), a phase correction accumulated from earlier
measurement outcomes, Hadamard, measure, reset. The multiply follows the
add-swap-unadd decomposition: y += b*x, conditional swap of x with the low
half of y, then y -= b^{-1}*x clears the work register. Entanglement of the
multiplier register against everything else is sampled immediately before
and after the middle swap; the swap is the only step that moves the product
back into x, so it is where the spectrum reorganizes.

The modular blocks act as classical reversible permutations, applied here
as cached index permutations. A gate-built adder reference lives in the
test suite and certifies the permutation path on small registers.

Measured bits assemble LSB-first into y; continued-fraction post-processing
proposes candidate orders (including small multiples of each convergent
denominator, which rescues measurements landing on non-reduced fractions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from ..rng import Stream, root_stream
from ..spectral import bipartition, spectrum_from_state, point_from_spectrum
from ..statevector import (H_GATE, StateVector, X_GATE, apply_1q,
                           apply_controlled, measure_qubit, new_basis)
from .trajectory import Trajectory

__all__ = [
    "ShorConfig", "shor_trajectory", "classify_spectrum",
    "order_from_phase", "factors_from_order", "brute_force_order",
]

MAX_MODULUS = 64

SPECTRUM_MATCH_TOL = 1e-9


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _prime_power_root(m: int) -> Optional[int]:
    # smallest prime p with m = p^k, if any
    p = 2
    while p * p <= m:
        if m % p == 0:
            q = m
            while q % p == 0:
                q //= p
            return p if q == 1 else None
        p += 1
    return None


@dataclass(frozen=True)
class ShorConfig:
    N: int
    a: int
    seed: int = 0

    def __post_init__(self):
        N, a = self.N, self.a
        if N > MAX_MODULUS:
            raise ValueError(f"modulus {N} exceeds the {MAX_MODULUS} cap")
        if N % 2 == 0:
            raise ValueError(f"modulus {N} is even; halve it classically")
        if _is_prime(N):
            raise ValueError(f"{N} is prime; nothing to factor")
        p = _prime_power_root(N)
        if p is not None:
            raise ValueError(f"{N} is a prime power of {p}; take roots classically")
        if not (1 < a < N):
            raise ValueError(f"base {a} outside (1, {N})")

    @property
    def n(self) -> int:
        return self.N.bit_length()

    @property
    def total_qubits(self) -> int:
        return 2 * self.n + 3


# register layout inside the 2n+3-qubit index:
#   bit 0            control (measured and reset each round)
#   bits 1..n        x, the multiplier register, starts at |1>
#   bits n+1..2n+1   y, the n+1-qubit work register
#   bit 2n+2         carry ancilla
def _fields(n: int):
    dim = 1 << (2 * n + 3)
    idx = np.arange(dim, dtype=np.int64)
    ctrl = idx & 1
    x = (idx >> 1) & ((1 << n) - 1)
    y = (idx >> (n + 1)) & ((1 << (n + 1)) - 1)
    return idx, ctrl, x, y


def _perm_add_multiple(n: int, b: int, N: int, sign: int) -> np.ndarray:
    """Index permutation for ctrl-conditioned y <- (y + sign*b*x) mod N."""
    idx, ctrl, x, y = _fields(n)
    act = (ctrl == 1) & (x < N) & (y < N)
    shift = (sign * b) % N
    y_new = np.where(act, (y + shift * x) % N, y)
    y_mask = ((1 << (n + 1)) - 1) << (n + 1)
    return (idx & ~y_mask) | (y_new << (n + 1))


def _perm_swap_halves(n: int) -> np.ndarray:
    """Index permutation for ctrl-conditioned swap of x with the low n bits of y."""
    idx, ctrl, x, y = _fields(n)
    y_low = y & ((1 << n) - 1)
    y_high = y >> n
    x_new = np.where(ctrl == 1, y_low, x)
    y_new = np.where(ctrl == 1, (y_high << n) | x, y)
    keep = idx & ~((((1 << (2 * n + 1)) - 1) << 1))
    return keep | (x_new << 1) | (y_new << (n + 1))


def _apply_perm(state: StateVector, perm: np.ndarray) -> None:
    out = np.empty_like(state.amps)
    out[perm] = state.amps
    state.amps = out


class _PermCache:
    def __init__(self, n: int, N: int):
        self.n, self.N = n, N
        self.swap = _perm_swap_halves(n)
        self._mult: dict = {}

    def add_multiple(self, b: int, sign: int) -> np.ndarray:
        key = (b % self.N, sign)
        if key not in self._mult:
            self._mult[key] = _perm_add_multiple(self.n, b, self.N, sign)
        return self._mult[key]


def classify_spectrum(values, tol: float = SPECTRUM_MATCH_TOL):
    """Match a reduced spectrum against the two closed forms seen in these runs.

    Returns ("cluster", m) for {1/2} plus 2^m equal weights 2^{-(m+1)} (entropy
    (m+2) ln2 / 2, largest weight pinned at 1/2), ("family", m) for
    {(m+1)/(2m)} plus m-1 equal weights 1/(2m) (a point exactly on the
    dedicated curve), or ("other", None). Zero weights below 1e-12 are
    dropped before matching.
    """
    vals = sorted((float(v) for v in values if v > 1e-12), reverse=True)
    if not vals:
        return ("other", None)
    k = len(vals)
    m = k  # family has one head plus m-1 tail entries
    head = (m + 1) / (2 * m)
    tail = 1.0 / (2 * m)
    if abs(vals[0] - head) <= tol and all(abs(v - tail) <= tol for v in vals[1:]):
        return ("family", m)
    if abs(vals[0] - 0.5) <= tol and k >= 2 and (k - 1) & (k - 2) == 0:
        mm = (k - 1).bit_length() - 1
        c = 2.0 ** (-(mm + 1))
        if all(abs(v - c) <= tol for v in vals[1:]):
            return ("cluster", mm)
    return ("other", None)


def brute_force_order(a: int, N: int) -> int:
    r, v = 1, a % N
    while v != 1:
        v = (v * a) % N
        r += 1
        if r > N:
            raise ValueError(f"{a} has no order mod {N}")
    return r


def order_from_phase(y: int, t_bits: int, a: int, N: int) -> Optional[int]:
    """Candidate order from a t_bits-bit phase measurement.

    Walks the continued-fraction convergents of y / 2^t_bits and, for each
    denominator, tries its small multiples up to N; a measurement of s/r
    with gcd(s, r) > 1 reduces to a smaller denominator, and the multiples
    recover r from it. Returns the smallest verified order, or None (y = 0
    carries no information).
    """
    if y == 0:
        return None
    target = Fraction(y, 1 << t_bits)
    seen = set()
    candidates = []
    for d in range(1, N + 1):
        den = target.limit_denominator(d).denominator
        if den not in seen:
            seen.add(den)
            candidates.append(den)
    for den in sorted(candidates):
        for mult in range(1, N // den + 1):
            r = den * mult
            if pow(a, r, N) == 1:
                return r
    return None


def factors_from_order(a: int, N: int, r: Optional[int]):
    if r is None or r % 2 == 1:
        return None
    half = pow(a, r // 2, N)
    if half == N - 1:
        return None
    f1, f2 = math.gcd(half - 1, N), math.gcd(half + 1, N)
    for f in (f1, f2):
        if 1 < f < N:
            return tuple(sorted((f, N // f)))
    return None


def shor_trajectory(cfg: ShorConfig, renyi_degrees=(2, 3),
                    stream: Optional[Stream] = None) -> Trajectory:
    """Run the full 2n-round semi-classical circuit and post-process.

    Trajectory points are pre_swap / post_swap per round on the x-register
    bipartition. results carries the measured bits, the phase, the verified
    order if any, the factor pair if recovery succeeded, and a per-point
    spectrum classification. A base sharing a factor with N short-circuits
    to the gcd without touching the simulator.
    """
    N, a = cfg.N, cfg.a
    traj = Trajectory(
        scenario="shor",
        config={"N": N, "a": a, "seed": cfg.seed, "n": cfg.n,
                "total_qubits": cfg.total_qubits},
    )
    g = math.gcd(a, N)
    if g != 1:
        traj.results = {"trivial_factor": True, "factors": tuple(sorted((g, N // g))),
                        "order": None, "bits": [], "y": None, "phase": None,
                        "round_classes": [], "success": True}
        return traj

    n = cfg.n
    t_bits = 2 * n
    stream = stream if stream is not None else root_stream(cfg.seed)
    traj.seeds = {"measurement": stream.describe()}

    part = bipartition(cfg.total_qubits, list(range(1, n + 1)))
    cache = _PermCache(n, N)
    state = new_basis(cfg.total_qubits, 1 << 1)  # x register starts at 1

    bits = []
    classes = []

    def checkpoint(label):
        spec = spectrum_from_state(state, part)
        kind, m = classify_spectrum(spec.values)
        classes.append({"label": label, "kind": kind, "m": m})
        traj.add_point(point_from_spectrum(spec, label, renyi_degrees,
                                           traj.next_sequence()))

    for k in range(t_bits):
        b = pow(a, 1 << (t_bits - 1 - k), N)
        b_inv = pow(b, -1, N)
        apply_1q(state, 0, H_GATE)
        _apply_perm(state, cache.add_multiple(b, +1))
        checkpoint(f"r{k:02d}|pre_swap")
        _apply_perm(state, cache.swap)
        checkpoint(f"r{k:02d}|post_swap")
        _apply_perm(state, cache.add_multiple(b_inv, -1))
        theta = -2.0 * math.pi * sum(bit / (1 << (k - j + 1))
                                     for j, bit in enumerate(bits))
        if theta != 0.0:
            apply_controlled(state, [0], ("phase", theta))
        apply_1q(state, 0, H_GATE)
        bit, _ = measure_qubit(state, 0, stream)
        if bit:
            apply_1q(state, 0, X_GATE)
        bits.append(bit)

    y = sum(bit << j for j, bit in enumerate(bits))
    order = order_from_phase(y, t_bits, a, N)
    factors = factors_from_order(a, N, order)
    traj.results = {
        "trivial_factor": False,
        "bits": bits,
        "y": y,
        "phase": y / (1 << t_bits),
        "order": order,
        "factors": factors,
        "round_classes": classes,
        "success": factors is not None,
    }
    traj.record_flexible_findings()
    return traj
