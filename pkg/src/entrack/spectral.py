"""Partial trace, entanglement spectra, and the measures built on them.

The reduced density matrix is always formed as M M-dagger from the reshaped
amplitude matrix, never as a projector on the full register, so memory goes
as alpha*beta + alpha^2. The smaller side of a bipartition is always labeled
alpha; Schmidt symmetry makes the swap lossless and it is recorded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import xlogy

from . import boundaries, numerics
from .statevector import StateVector, apply_qft

__all__ = [
    "Bipartition",
    "ReducedDensityMatrix",
    "TrajectoryPoint",
    "bipartition",
    "natural_bipartition",
    "partial_trace",
    "spectrum",
    "von_neumann",
    "renyi",
    "min_entropy",
    "ent_gap",
    "GAP_ZERO_EIGENVALUE",
    "point_from_spectrum",
    "spectrum_from_state",
    "trajectory_point",
    "qft_compare",
]

# second eigenvalue below this counts as zero and the gap becomes the +inf
# sentinel (rendered as 2 ln alpha only at the export/plot layer)
GAP_ZERO_EIGENVALUE = 1e-12


@dataclass(frozen=True)
class Bipartition:
    subsystem: tuple
    complement: tuple
    alpha: int
    beta: int
    swapped: bool  # true when the requested subsystem was the larger side


def bipartition(n: int, subsystem) -> Bipartition:
    """Normalize a subsystem choice so that alpha <= beta.

    `subsystem` lists qubit indices; when it is the larger side the roles
    swap (recorded in `swapped`) since the nonzero spectrum is the same.
    """
    sub = tuple(int(q) for q in subsystem)
    if len(set(sub)) != len(sub):
        raise ValueError("subsystem has repeated qubits")
    for q in sub:
        if not (0 <= q < n):
            raise ValueError(f"qubit {q} out of range for n={n}")
    if not (0 < len(sub) < n):
        raise ValueError("subsystem must be a proper nonempty subset")
    comp = tuple(q for q in range(n) if q not in sub)
    if len(sub) > len(comp):
        sub, comp = comp, sub
        swapped = True
    else:
        swapped = False
    return Bipartition(sub, comp, 1 << len(sub), 1 << len(comp), swapped)


def natural_bipartition(n: int) -> Bipartition:
    """High n/2 qubits versus low n/2 qubits."""
    if n % 2 != 0:
        raise ValueError("natural bipartition needs an even qubit count")
    return bipartition(n, range(n // 2, n))


@dataclass
class ReducedDensityMatrix:
    alpha: int
    beta: int
    data: np.ndarray


def _coefficient_matrix(state: StateVector, part: Bipartition) -> np.ndarray:
    """Reshape amplitudes to the alpha x beta matrix M of the bipartition."""
    n = state.n
    if len(part.subsystem) + len(part.complement) != n:
        raise ValueError("bipartition does not match the state's qubit count")
    tensor = state.amps.reshape([2] * n)
    # axis a of the tensor is qubit n-1-a; row bits ordered so that
    # subsystem[i] contributes 2^i to the row index
    sub_axes = [n - 1 - q for q in reversed(part.subsystem)]
    comp_axes = [n - 1 - q for q in reversed(part.complement)]
    return tensor.transpose(sub_axes + comp_axes).reshape(part.alpha, part.beta)


def partial_trace(state: StateVector, part: Bipartition) -> ReducedDensityMatrix:
    """rho_A = M M-dagger over the bipartition; trace validated to 1."""
    m = _coefficient_matrix(state, part)
    rho = m @ m.conj().T
    rho = 0.5 * (rho + rho.conj().T)  # kill GEMM roundoff asymmetry
    tr = float(np.real(np.trace(rho)))
    if abs(tr - 1.0) > 1e-9:
        raise ValueError(f"reduced matrix trace {tr!r} differs from 1 beyond 1e-9")
    return ReducedDensityMatrix(part.alpha, part.beta, rho)


def spectrum(rho: ReducedDensityMatrix) -> numerics.Spectrum:
    """Descending, clamped eigenvalues of the reduced matrix."""
    w = numerics.eigvalsh(rho.data)
    return numerics.Spectrum.from_density(w, rho.alpha, rho.beta)


def von_neumann(s: numerics.Spectrum) -> float:
    """-sum lambda ln lambda in nats; 0 ln 0 = 0."""
    return float(-np.sum(xlogy(s.values, s.values)))


def renyi(s: numerics.Spectrum, d: float) -> float:
    """Renyi entropy of degree d (nats). d=1 is the von Neumann limit and
    is rejected; d=0 counts nonzero eigenvalues above 1e-12."""
    if d == 1:
        raise ValueError("degree 1 is the von Neumann limit; call von_neumann")
    if d < 0:
        raise ValueError(f"degree must be nonnegative, got {d}")
    if d == 0:
        return math.log(int(np.sum(s.values > 1e-12)))
    return float(np.log(np.sum(s.values**d)) / (1.0 - d))


def min_entropy(s: numerics.Spectrum) -> float:
    """-ln lambda0, the d -> infinity limit of the Renyi family."""
    return -math.log(s.lambda0)


def ent_gap(s: numerics.Spectrum) -> float:
    """ln(lambda0 / lambda1), or +inf when lambda1 is numerically zero."""
    if s.values.size < 2 or s.values[1] < GAP_ZERO_EIGENVALUE:
        return math.inf
    return float(math.log(s.values[0] / s.values[1]))


@dataclass
class TrajectoryPoint:
    label: str
    lambda0: float
    entropy: float
    gap: float
    renyi: dict
    alpha: int
    beta: int
    sequence: int = 0

    def __post_init__(self):
        a = self.alpha
        if not (1.0 / a - 1e-9 <= self.lambda0 <= 1.0 + 1e-9):
            raise ValueError(f"lambda0={self.lambda0!r} outside [1/{a}, 1]")
        if not (-1e-9 <= self.entropy <= math.log(a) + 1e-9):
            raise ValueError(f"entropy={self.entropy!r} outside [0, ln {a}]")
        lo = boundaries.f1(min(self.lambda0, 1.0))
        hi = boundaries.exact_upper(min(max(self.lambda0, 1.0 / a), 1.0), a)
        if not (lo - 1e-9 <= self.entropy <= hi + 1e-9):
            raise ValueError(
                f"point {self.label!r} breaks tight containment: "
                f"E={self.entropy!r} outside [{lo!r} - 1e-9, {hi!r} + 1e-9] at lambda0={self.lambda0!r}"
            )


def point_from_spectrum(s: numerics.Spectrum, label: str, renyi_degrees=(2, 3),
                        sequence: int = 0) -> TrajectoryPoint:
    return TrajectoryPoint(
        label=label,
        lambda0=s.lambda0,
        entropy=von_neumann(s),
        gap=ent_gap(s),
        renyi={d: renyi(s, d) for d in renyi_degrees},
        alpha=s.alpha,
        beta=s.beta,
        sequence=sequence,
    )


def spectrum_from_state(state: StateVector, part: Bipartition) -> numerics.Spectrum:
    return spectrum(partial_trace(state, part))


def trajectory_point(state: StateVector, part: Bipartition, label: str,
                     renyi_degrees=(2, 3), sequence: int = 0) -> TrajectoryPoint:
    """One dot on a trajectory figure: all measures of one checkpoint."""
    s = spectrum_from_state(state, part)
    return point_from_spectrum(s, label, renyi_degrees, sequence)


def qft_compare(state: StateVector, part: Bipartition, qft_qubits=None,
                renyi_degrees=(2, 3)):
    """Trajectory points before and after a full-register QFT.

    Works on a copy; the caller's state is untouched.
    """
    before = trajectory_point(state, part, "pre_qft", renyi_degrees, 0)
    work = state.copy()
    apply_qft(work, range(work.n) if qft_qubits is None else qft_qubits)
    after = trajectory_point(work, part, "post_qft", renyi_degrees, 1)
    return before, after
