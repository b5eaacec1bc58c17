"""Dense n-qubit statevector simulation.

Qubit 0 is the least significant bit of the basis index. Gate kernels
mutate the amplitude array in place; 1q gates run over bit strides, wider
controlled operations go through cached index masks. The QFT has a gate
construction for arbitrary qubit subsets and an FFT fast path for the full
register in natural order; the two are required to agree and the test suite
holds them to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import Stream

__all__ = [
    "StateVector",
    "MAX_QUBITS",
    "new_basis",
    "new_uniform",
    "random_state",
    "apply_1q",
    "apply_controlled",
    "apply_qft",
    "measure_qubit",
    "H_GATE",
    "X_GATE",
]

MAX_QUBITS = 24

_SQ2 = 1.0 / math.sqrt(2.0)
H_GATE = np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)
X_GATE = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


@dataclass
class StateVector:
    n: int
    amps: np.ndarray

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amps.copy())


def _check_n(n: int, max_qubits: int = MAX_QUBITS):
    if not (1 <= n <= max_qubits):
        raise ValueError(f"qubit count {n} outside [1, {max_qubits}]")


def new_basis(n: int, index: int, max_qubits: int = MAX_QUBITS) -> StateVector:
    """Computational basis state |index> on n qubits."""
    _check_n(n, max_qubits)
    if not (0 <= index < (1 << n)):
        raise ValueError(f"basis index {index} out of range for n={n}")
    amps = np.zeros(1 << n, dtype=complex)
    amps[index] = 1.0
    return StateVector(n, amps)


def new_uniform(n: int, max_qubits: int = MAX_QUBITS) -> StateVector:
    """Equal superposition of all 2^n computational states."""
    _check_n(n, max_qubits)
    amps = np.full(1 << n, 2.0 ** (-n / 2.0), dtype=complex)
    return StateVector(n, amps)


def random_state(n: int, stream: Stream, max_qubits: int = MAX_QUBITS) -> StateVector:
    """Haar-distributed pure state (normalized complex Gaussian amplitudes)."""
    _check_n(n, max_qubits)
    dim = 1 << n
    z = stream.gen.standard_normal(dim) + 1j * stream.gen.standard_normal(dim)
    return StateVector(n, z / np.linalg.norm(z))


def _require_unitary(gate: np.ndarray, tol: float = 1e-12):
    gate = np.asarray(gate, dtype=complex)
    if gate.shape != (2, 2):
        raise ValueError(f"expected a 2x2 gate, got shape {gate.shape}")
    dev = float(np.abs(gate.conj().T @ gate - np.eye(2)).max())
    if dev > tol:
        raise ValueError(f"gate not unitary within {tol:.1e} (deviation {dev:.3e})")
    return gate


def apply_1q(state: StateVector, target: int, gate: np.ndarray) -> StateVector:
    """Apply a 2x2 unitary to one qubit, in place, via bit strides."""
    if not (0 <= target < state.n):
        raise ValueError(f"target {target} out of range for n={state.n}")
    g = _require_unitary(gate)
    # view with axis 1 enumerating the target bit
    v = state.amps.reshape(-1, 2, 1 << target)
    a0 = v[:, 0, :].copy()
    a1 = v[:, 1, :]
    v[:, 0, :] = g[0, 0] * a0 + g[0, 1] * a1
    v[:, 1, :] = g[1, 0] * a0 + g[1, 1] * a1
    return state


# basis-index arrays, cached per register size
_INDEX_CACHE: dict[int, np.ndarray] = {}


def _indices(n: int) -> np.ndarray:
    idx = _INDEX_CACHE.get(n)
    if idx is None:
        idx = np.arange(1 << n, dtype=np.int64)
        if len(_INDEX_CACHE) > 8:
            _INDEX_CACHE.clear()
        _INDEX_CACHE[n] = idx
    return idx


def _control_filter(n: int, controls) -> np.ndarray:
    idx = _indices(n)
    if not controls:
        return idx
    mask = 0
    for c in controls:
        mask |= 1 << c
    return idx[(idx & mask) == mask]


def apply_controlled(state: StateVector, controls, op) -> StateVector:
    """Apply `op` on the subspace where every control qubit is 1.

    op is one of
      ("x", target)
      ("swap", q1, q2)
      ("phase", theta)          multiplies the all-controls-1 subspace by e^{i theta}
      ("gate", target, U)       arbitrary 2x2 unitary on target
    Controls and targets must be disjoint. An empty control list applies the
    operation unconditionally.
    """
    n = state.n
    controls = list(controls)
    kind = op[0]
    targets = []
    if kind == "x":
        targets = [op[1]]
    elif kind == "swap":
        targets = [op[1], op[2]]
    elif kind == "phase":
        targets = []
    elif kind == "gate":
        targets = [op[1]]
    else:
        raise ValueError(f"unknown controlled op {kind!r}")
    seen = set()
    for q in controls + targets:
        if not (0 <= q < n):
            raise ValueError(f"qubit {q} out of range for n={n}")
        if q in seen:
            raise ValueError(f"qubit {q} appears twice in controls/targets")
        seen.add(q)

    amps = state.amps
    sel = _control_filter(n, controls)
    if kind == "phase":
        amps[sel] *= np.exp(1j * float(op[1]))
        return state
    if kind == "x":
        t = op[1]
        lo = sel[(sel >> t) & 1 == 0]
        hi = lo | (1 << t)
        tmp = amps[lo].copy()
        amps[lo] = amps[hi]
        amps[hi] = tmp
        return state
    if kind == "swap":
        q1, q2 = op[1], op[2]
        pick = sel[((sel >> q1) & 1 == 1) & ((sel >> q2) & 1 == 0)]
        partner = pick ^ ((1 << q1) | (1 << q2))
        tmp = amps[pick].copy()
        amps[pick] = amps[partner]
        amps[partner] = tmp
        return state
    # ("gate", target, U)
    t, g = op[1], _require_unitary(op[2])
    lo = sel[(sel >> t) & 1 == 0]
    hi = lo | (1 << t)
    a0 = amps[lo].copy()
    a1 = amps[hi]
    amps[lo] = g[0, 0] * a0 + g[0, 1] * a1
    amps[hi] = g[1, 0] * a0 + g[1, 1] * a1
    return state


def _qft_ops(qubits):
    """Forward-QFT op list; list position i in `qubits` carries weight 2^i."""
    qs = list(qubits)
    k = len(qs)
    ops = []
    for t in range(k - 1, -1, -1):
        ops.append(("h", qs[t]))
        for s in range(t - 1, -1, -1):
            ops.append(("cp", qs[s], qs[t], math.pi / (1 << (t - s))))
    for t in range(k // 2):
        ops.append(("swap", qs[t], qs[k - 1 - t]))
    return ops


def apply_qft(state: StateVector, qubits, inverse: bool = False) -> StateVector:
    """Exact QFT (or its inverse) on the listed qubits, in place.

    The list is ordered least significant first: with value v read off the
    listed qubits, the action is |v> -> sum_u exp(+2 pi i v u / 2^k) |u> / 2^(k/2).
    Bit-reversal swaps are included. Full register in natural order takes an
    FFT fast path.
    """
    qs = list(qubits)
    if len(set(qs)) != len(qs):
        raise ValueError("duplicate qubits in QFT register")
    for q in qs:
        if not (0 <= q < state.n):
            raise ValueError(f"qubit {q} out of range for n={state.n}")
    if not qs:
        return state
    if qs == list(range(state.n)):
        # whole register: the QFT is a scaled inverse DFT of the amplitudes
        dim = 1 << state.n
        if inverse:
            state.amps[:] = np.fft.fft(state.amps) / math.sqrt(dim)
        else:
            state.amps[:] = np.fft.ifft(state.amps) * math.sqrt(dim)
        return state
    ops = _qft_ops(qs)
    if inverse:
        ops = [(o[0], *o[1:-1], -o[-1]) if o[0] == "cp" else o for o in reversed(ops)]
    for o in ops:
        if o[0] == "h":
            apply_1q(state, o[1], H_GATE)
        elif o[0] == "cp":
            apply_controlled(state, [o[1], o[2]], ("phase", o[3]))
        else:
            apply_controlled(state, [], ("swap", o[1], o[2]))
    return state


def measure_qubit(state: StateVector, target: int, stream: Stream):
    """Born-rule measurement of one qubit; collapses and renormalizes in place.

    Returns (outcome bit, state). The caller owns the transcript of outcomes.
    """
    if not (0 <= target < state.n):
        raise ValueError(f"target {target} out of range for n={state.n}")
    v = state.amps.reshape(-1, 2, 1 << target)
    p1 = float(np.sum(np.abs(v[:, 1, :]) ** 2))
    p1 = min(max(p1, 0.0), 1.0)
    outcome = 1 if stream.gen.random() < p1 else 0
    p_branch = p1 if outcome == 1 else 1.0 - p1
    if p_branch < 1e-12:
        raise RuntimeError(f"measurement branch {outcome} has norm {p_branch:.3e}, impossible branch")
    v[:, 1 - outcome, :] = 0.0
    state.amps *= 1.0 / math.sqrt(p_branch)
    return outcome, state
