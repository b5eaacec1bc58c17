"""Amplitude-amplification search with checkpointed entanglement sampling.

The oracle is pluggable: anything that phase-flips its marked search states
while returning every ancilla to |0> can drive the engine, and it declares
its own mid-oracle checkpoints. The built-in oracle recognizes satisfying
assignments of an Exact Cover instance with one ancilla per clause (parity
of the three clause bits, corrected by a triple-controlled flip, detects
the exactly-one condition) plus one phase ancilla held in |->.

Four checkpoints per iteration: before and after the central multi-controlled
flip, after the uncompute, and after the diffusion step. The bipartition is
search register versus everything else, smaller side labeled alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..spectral import bipartition, trajectory_point
from ..statevector import (H_GATE, MAX_QUBITS, StateVector, X_GATE,
                           apply_1q, apply_controlled, new_basis)
from . import exact_cover
from .trajectory import Trajectory

__all__ = [
    "grover_iterations", "ECOracle", "PermutationOracle",
    "verify_phase_oracle", "grover_custom_oracle_trajectory",
    "grover_ec_trajectory", "success_probability",
]

ORACLE_VERIFY_MAX_QUBITS = 12


def grover_iterations(n: int, marked: int) -> int:
    """floor((pi/4) sqrt(2^n / M)) amplification rounds."""
    if not (1 <= marked < (1 << n)):
        raise ValueError(f"marked count {marked} outside [1, 2^{n})")
    return int(math.floor(math.pi / 4.0 * math.sqrt((1 << n) / marked)))


class ECOracle:
    """Phase oracle for an Exact Cover instance.

    Ancillas: one per clause plus a trailing phase ancilla. Declared
    checkpoints: pre_central, post_central.
    """

    checkpoint_labels = ("pre_central", "post_central")

    def __init__(self, inst: exact_cover.ECInstance):
        self.instance = inst
        self.name = "exact_cover"
        self.ancilla_count = len(inst.clauses) + 1
        self.marked_states = [int(z) for z in exact_cover.solutions(inst)]

    def describe(self) -> dict:
        return {"oracle": self.name, "n": self.instance.n,
                "clauses": [list(c) for c in self.instance.clauses]}

    def _clause_ops(self, search, ancillas):
        ops = []
        for j, (a, b, c) in enumerate(self.instance.clauses):
            anc = ancillas[j]
            ops.append(([search[a]], ("x", anc)))
            ops.append(([search[b]], ("x", anc)))
            ops.append(([search[c]], ("x", anc)))
            ops.append(([search[a], search[b], search[c]], ("x", anc)))
        return ops

    def apply(self, state: StateVector, search, ancillas, emit):
        clause_ancs, phase_anc = list(ancillas[:-1]), ancillas[-1]
        apply_1q(state, phase_anc, X_GATE)
        apply_1q(state, phase_anc, H_GATE)
        compute = self._clause_ops(search, clause_ancs)
        for controls, op in compute:
            apply_controlled(state, controls, op)
        emit("pre_central")
        apply_controlled(state, clause_ancs, ("x", phase_anc))
        emit("post_central")
        for controls, op in reversed(compute):
            apply_controlled(state, controls, op)
        apply_1q(state, phase_anc, H_GATE)
        apply_1q(state, phase_anc, X_GATE)


class PermutationOracle:
    """Marks a single basis state; the minimal pluggable oracle."""

    checkpoint_labels = ()

    def __init__(self, marked_state: int, n: int):
        if not (0 <= marked_state < (1 << n)):
            raise ValueError("marked state outside the search space")
        self.name = "single_marked"
        self.n = n
        self.ancilla_count = 1
        self.marked_states = [int(marked_state)]

    def describe(self) -> dict:
        return {"oracle": self.name, "n": self.n, "marked": self.marked_states[0]}

    def apply(self, state: StateVector, search, ancillas, emit):
        phase_anc = ancillas[-1]
        z = self.marked_states[0]
        flips = [search[q] for q in range(len(search)) if not (z >> q) & 1]
        apply_1q(state, phase_anc, X_GATE)
        apply_1q(state, phase_anc, H_GATE)
        for q in flips:
            apply_1q(state, q, X_GATE)
        apply_controlled(state, list(search), ("x", phase_anc))
        for q in flips:
            apply_1q(state, q, X_GATE)
        apply_1q(state, phase_anc, H_GATE)
        apply_1q(state, phase_anc, X_GATE)


class OracleContractError(ValueError):
    pass


def verify_phase_oracle(oracle, n_search: int):
    """Basis sweep proving the oracle is a pure +-1 phase on the search register.

    Only feasible for small registers; returns the marked-state list. An
    oracle that marks nothing, moves amplitude between basis states, or
    applies a non-real phase is rejected.
    """
    n_total = n_search + oracle.ancilla_count
    if n_total > ORACLE_VERIFY_MAX_QUBITS:
        raise ValueError(f"verification sweep capped at {ORACLE_VERIFY_MAX_QUBITS} qubits")
    search = list(range(n_search))
    ancillas = list(range(n_search, n_total))
    marked = []
    for z in range(1 << n_search):
        state = new_basis(n_total, z)
        oracle.apply(state, search, ancillas, lambda _label: None)
        amp = state.amps[z]
        off = float(np.sum(np.abs(state.amps) ** 2) - np.abs(amp) ** 2)
        if off > 1e-18 or abs(abs(amp) - 1.0) > 1e-9 or abs(amp.imag) > 1e-9:
            raise OracleContractError(
                f"oracle is not a real phase flip on basis state {z}: "
                f"diagonal amplitude {amp!r}, off-diagonal weight {off:.3e}")
        if amp.real < 0.0:
            marked.append(z)
    if not marked:
        raise OracleContractError("oracle marks no state")
    return marked


def _diffusion(state: StateVector, search):
    for q in search:
        apply_1q(state, q, H_GATE)
    for q in search:
        apply_1q(state, q, X_GATE)
    apply_controlled(state, list(search), ("phase", math.pi))
    for q in search:
        apply_1q(state, q, X_GATE)
    for q in search:
        apply_1q(state, q, H_GATE)


def success_probability(state: StateVector, n_search: int, marked) -> float:
    idx = np.arange(state.amps.size)
    pick = np.isin(idx & ((1 << n_search) - 1), np.asarray(list(marked), dtype=np.int64))
    return float(np.sum(np.abs(state.amps[pick]) ** 2))


def grover_custom_oracle_trajectory(oracle, search_qubits: int, seed: int = 0,
                                    iterations: int | None = None,
                                    renyi_degrees=(2, 3)) -> Trajectory:
    """Run amplification with any contract-passing oracle, checkpointing
    entanglement along the way.

    The oracle's declared checkpoints are emitted inside each iteration with
    an it<k>| prefix; the engine adds post_uncompute and post_diffusion. The
    phase-flip contract is certified by a basis sweep whenever the register
    is small enough.
    """
    n = int(search_qubits)
    n_total = n + oracle.ancilla_count
    if n_total > MAX_QUBITS:
        raise ValueError(f"{n_total} qubits exceed the {MAX_QUBITS}-qubit budget")
    if n_total <= ORACLE_VERIFY_MAX_QUBITS:
        swept = verify_phase_oracle(oracle, n)
        if sorted(swept) != sorted(oracle.marked_states):
            raise OracleContractError(
                f"oracle declares marked states {sorted(oracle.marked_states)} "
                f"but the sweep found {sorted(swept)}")
    marked = list(oracle.marked_states)
    t = grover_iterations(n, len(marked)) if iterations is None else int(iterations)

    search = list(range(n))
    ancillas = list(range(n, n_total))
    part = bipartition(n_total, search)
    state = new_basis(n_total, 0)
    for q in search:
        apply_1q(state, q, H_GATE)

    traj = Trajectory(
        scenario="grover",
        config={**oracle.describe(), "search_qubits": n, "iterations": t,
                "marked_count": len(marked), "alpha": part.alpha, "beta": part.beta,
                "seed": seed},
    )
    traj.add_point(trajectory_point(state, part, "init", renyi_degrees, traj.next_sequence()))
    for it in range(1, t + 1):
        prefix = f"it{it:02d}|"
        oracle.apply(state, search, ancillas,
                     lambda label: traj.add_point(trajectory_point(
                         state, part, prefix + label, renyi_degrees, traj.next_sequence())))
        traj.add_point(trajectory_point(state, part, prefix + "post_uncompute",
                                        renyi_degrees, traj.next_sequence()))
        _diffusion(state, search)
        traj.add_point(trajectory_point(state, part, prefix + "post_diffusion",
                                        renyi_degrees, traj.next_sequence()))
    traj.results = {"success_probability": success_probability(state, n, marked),
                    "iterations": t}
    traj.record_flexible_findings()
    return traj


def grover_ec_trajectory(inst: exact_cover.ECInstance, seed: int = 0,
                         iterations: int | None = None, renyi_degrees=(2, 3)) -> Trajectory:
    """Amplification over an Exact Cover instance's satisfying assignments."""
    traj = grover_custom_oracle_trajectory(ECOracle(inst), inst.n, seed, iterations,
                                           renyi_degrees)
    traj.scenario = "grover_ec"
    return traj
