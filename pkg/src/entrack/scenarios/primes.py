"""States supported on integers with a fixed count of prime factors.

Omega counts prime factors with multiplicity, computed for a whole range at
once by adding 1 along every prime-power stride (p, p^2, ... each contribute
one factor to their multiples). A register of n qubits holds the uniform
superposition over integers in [2, 2^n) with exactly k factors, or at most
k; the trajectory walks k across its full range under the half register
bipartition, optionally pairing each point with its image after a
full-register Fourier transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..spectral import natural_bipartition, trajectory_point
from ..statevector import StateVector, apply_qft
from .trajectory import Trajectory

__all__ = [
    "MAX_PRIME_QUBITS", "PrimeStateSpec", "omega", "omega_sieve",
    "factor_count_histogram", "prime_state", "prime_trajectory",
]

MAX_PRIME_QUBITS = 20


def omega_sieve(limit: int) -> np.ndarray:
    """Omega(x) for every x < limit; positions 0 and 1 stay 0."""
    if limit < 2:
        raise ValueError("sieve needs limit >= 2")
    om = np.zeros(limit, dtype=np.int16)
    for p in range(2, limit):
        if om[p]:
            continue
        pk = p
        while pk < limit:
            om[pk::pk] += 1
            pk *= p
    return om


def omega(x: int) -> int:
    """Prime factors of x counted with multiplicity."""
    if x < 2:
        raise ValueError(f"omega is defined for integers >= 2, got {x}")
    count, v, p = 0, x, 2
    while p * p <= v:
        while v % p == 0:
            v //= p
            count += 1
        p += 1
    return count + (1 if v > 1 else 0)


@dataclass(frozen=True)
class PrimeStateSpec:
    n: int
    kind: str  # "P" exact count, "U" union up to the count
    k: int

    def __post_init__(self):
        if self.n % 2 != 0 or not (2 <= self.n <= MAX_PRIME_QUBITS):
            raise ValueError(f"qubit count must be even and <= {MAX_PRIME_QUBITS}")
        if self.kind not in ("P", "U"):
            raise ValueError(f"kind must be P or U, got {self.kind!r}")
        if not (1 <= self.k <= self.n - 1):
            raise ValueError(f"k={self.k} outside [1, {self.n - 1}]")

    @property
    def label(self) -> str:
        return f"{self.kind}{self.k}"


def factor_count_histogram(n: int) -> np.ndarray:
    """Support sizes by factor count over [2, 2^n): entry k counts Omega = k.

    Entries 1..n-1 sum to 2^n - 2 since no integer below 2^n has n factors.
    """
    om = omega_sieve(1 << n)
    return np.bincount(om[2:], minlength=n)


def _support(spec: PrimeStateSpec, om: np.ndarray) -> np.ndarray:
    vals = om[2:]
    if spec.kind == "P":
        mask = vals == spec.k
    else:
        mask = vals <= spec.k
    return np.nonzero(mask)[0] + 2


def prime_state(spec: PrimeStateSpec, om: np.ndarray | None = None) -> StateVector:
    """Uniform superposition over the spec's support."""
    dim = 1 << spec.n
    if om is None:
        om = omega_sieve(dim)
    support = _support(spec, om)
    if support.size == 0:
        raise ValueError(f"{spec.label} has empty support at n={spec.n}")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[support] = 1.0 / math.sqrt(support.size)
    return StateVector(spec.n, amps)


def prime_trajectory(n: int, with_qft: bool = False,
                     renyi_degrees=(2, 3)) -> Trajectory:
    """Points for every exact-count and union state at register size n.

    Labels are P<k> / U<k>, with |qft appended for the transformed copies.
    results carries the support-size histogram.
    """
    om = omega_sieve(1 << n)
    part = natural_bipartition(n)
    traj = Trajectory(
        scenario="primes",
        config={"n": n, "with_qft": bool(with_qft), "alpha": part.alpha,
                "beta": part.beta},
    )
    for k in range(1, n):
        for kind in ("P", "U"):
            spec = PrimeStateSpec(n, kind, k)
            state = prime_state(spec, om)
            traj.add_point(trajectory_point(state, part, spec.label,
                                            renyi_degrees, traj.next_sequence()))
            if with_qft:
                apply_qft(state, range(n))
                traj.add_point(trajectory_point(state, part, spec.label + "|qft",
                                                renyi_degrees, traj.next_sequence()))
    hist = factor_count_histogram(n)
    traj.results = {"support_sizes": {f"P{k}": int(hist[k]) for k in range(1, n)}}
    traj.record_flexible_findings()
    return traj
