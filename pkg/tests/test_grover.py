"""Amplitude amplification: oracle contract, checkpoints, success rates."""

import math

import numpy as np
import pytest

from entrack.rng import root_stream
from entrack.scenarios.exact_cover import generate_instance, load_pinned_instance, solutions
from entrack.scenarios.grover import (
    ECOracle,
    OracleContractError,
    PermutationOracle,
    grover_custom_oracle_trajectory,
    grover_ec_trajectory,
    grover_iterations,
    success_probability,
    verify_phase_oracle,
)
from entrack.statevector import StateVector, apply_1q, new_basis, new_uniform

LN2 = math.log(2.0)


# ---------------------------------------------------------------------------
# iteration count


def test_iteration_counts_pinned():
    assert grover_iterations(10, 1) == 25
    assert grover_iterations(8, 2) == 8
    assert grover_iterations(2, 1) == 1


def test_iteration_count_validation():
    with pytest.raises(ValueError, match="marked count"):
        grover_iterations(4, 0)
    with pytest.raises(ValueError, match="marked count"):
        grover_iterations(4, 16)


# ---------------------------------------------------------------------------
# oracle contract


def test_permutation_oracle_passes_sweep():
    oracle = PermutationOracle(0b0110, 4)
    assert verify_phase_oracle(oracle, 4) == [0b0110]


def test_ec_oracle_marks_exactly_the_solutions():
    inst = generate_instance(6, 5, root_stream(606))
    oracle = ECOracle(inst)
    assert oracle.ancilla_count == 6  # five clause ancillas + phase ancilla
    marked = verify_phase_oracle(oracle, 6)
    assert marked == [int(z) for z in solutions(inst)]


def test_oracle_that_marks_nothing_is_rejected():
    class Silent:
        ancilla_count = 1
        checkpoint_labels = ()
        marked_states = []
        name = "silent"

        def describe(self):
            return {"oracle": self.name}

        def apply(self, state, search, ancillas, emit):
            pass

    with pytest.raises(OracleContractError, match="marks no state"):
        verify_phase_oracle(Silent(), 3)


def test_amplitude_moving_oracle_is_rejected():
    class Shifter:
        ancilla_count = 1
        checkpoint_labels = ()
        marked_states = [0]
        name = "shifter"

        def describe(self):
            return {"oracle": self.name}

        def apply(self, state, search, ancillas, emit):
            from entrack.statevector import X_GATE

            apply_1q(state, search[0], X_GATE)  # moves weight between basis states

    with pytest.raises(OracleContractError, match="not a real phase flip"):
        verify_phase_oracle(Shifter(), 3)


def test_complex_phase_oracle_is_rejected():
    class Rotator:
        ancilla_count = 1
        checkpoint_labels = ()
        marked_states = [0]
        name = "rotator"

        def describe(self):
            return {"oracle": self.name}

        def apply(self, state, search, ancillas, emit):
            from entrack.statevector import apply_controlled

            apply_controlled(state, [], ("phase", math.pi / 2))

    with pytest.raises(OracleContractError, match="not a real phase flip"):
        verify_phase_oracle(Rotator(), 3)


def test_declared_marked_states_must_match_sweep():
    class Liar:
        # behaves like a single-marked oracle on 3 but declares 5
        ancilla_count = 1
        checkpoint_labels = ()
        marked_states = [5]
        name = "liar"
        _inner = PermutationOracle(3, 4)

        def describe(self):
            return {"oracle": self.name}

        def apply(self, state, search, ancillas, emit):
            self._inner.apply(state, search, ancillas, emit)

    with pytest.raises(OracleContractError, match="declares"):
        grover_custom_oracle_trajectory(Liar(), 4)


def test_sweep_cap_and_qubit_budget():
    with pytest.raises(ValueError, match="capped"):
        verify_phase_oracle(PermutationOracle(0, 13), 13)

    class Wide:
        ancilla_count = 30
        checkpoint_labels = ()
        marked_states = [0]
        name = "wide"

        def describe(self):
            return {"oracle": self.name}

        def apply(self, *a):
            pass

    with pytest.raises(ValueError, match="budget"):
        grover_custom_oracle_trajectory(Wide(), 4)


# ---------------------------------------------------------------------------
# success probability bookkeeping


def test_success_probability_masks_low_bits():
    # search register in the low 2 bits of a 3-qubit state
    s = new_basis(3, 0b110)  # search part = 0b10
    assert success_probability(s, 2, [0b10]) == pytest.approx(1.0, abs=1e-12)
    assert success_probability(s, 2, [0b01]) == 0.0
    u = new_uniform(3)
    assert success_probability(u, 2, [0, 1]) == pytest.approx(0.5, abs=1e-12)


# ---------------------------------------------------------------------------
# end-to-end runs


def test_permutation_search_small_register():
    traj = grover_custom_oracle_trajectory(PermutationOracle(0b1011, 4), 4, seed=0)
    assert traj.results["iterations"] == 3
    assert traj.results["success_probability"] == pytest.approx(0.961319, abs=1e-6)
    assert traj.results["success_probability"] >= 0.95
    # engine checkpoints only: init + 2 per iteration
    assert len(traj.points) == 1 + 3 * 2
    assert traj.points[0].label == "init"
    assert traj.points[0].lambda0 == pytest.approx(1.0, abs=1e-12)
    assert traj.points[0].entropy == pytest.approx(0.0, abs=1e-12)
    last = traj.points[-1]
    assert last.label == "it03|post_diffusion"
    assert last.lambda0 == pytest.approx(1.0, abs=1e-9)
    assert last.entropy == pytest.approx(0.0, abs=1e-9)


def test_zero_iteration_run_is_initial_point_only():
    traj = grover_custom_oracle_trajectory(PermutationOracle(5, 4), 4, iterations=0)
    assert len(traj.points) == 1
    assert traj.points[0].lambda0 == pytest.approx(1.0, abs=1e-12)
    assert traj.results["success_probability"] == pytest.approx(1 / 16, abs=1e-12)


def test_ec_trajectory_checkpoint_cadence_and_bound():
    inst = generate_instance(6, 5, root_stream(606))
    traj = grover_ec_trajectory(inst, seed=0)
    assert traj.scenario == "grover_ec"
    t = traj.results["iterations"]
    assert t == 6
    # init + 4 checkpoints per iteration (2 declared + 2 engine)
    assert len(traj.points) == 1 + 4 * t
    labels = [p.label for p in traj.points[1:5]]
    assert labels == ["it01|pre_central", "it01|post_central",
                      "it01|post_uncompute", "it01|post_diffusion"]
    assert traj.results["success_probability"] >= 0.99
    # ancillas are exactly restored, so post-diffusion points are product
    for p in traj.points:
        if p.label.endswith("post_diffusion"):
            assert p.entropy <= LN2 + 1e-6
    # the mid-oracle checkpoints are the entangled ones
    assert any(p.entropy > 0.01 for p in traj.points if "central" in p.label)


def test_ec_wrapper_matches_custom_engine():
    inst = generate_instance(6, 5, root_stream(606))
    a = grover_ec_trajectory(inst, seed=0)
    b = grover_custom_oracle_trajectory(ECOracle(inst), 6, seed=0)
    assert [(p.label, p.lambda0, p.entropy, p.gap) for p in a.points] == [
        (p.label, p.lambda0, p.entropy, p.gap) for p in b.points
    ]
    assert a.results == b.results


def test_trajectory_alpha_is_smaller_side():
    inst = generate_instance(6, 5, root_stream(606))
    traj = grover_ec_trajectory(inst, seed=0)
    # 6 search vs 6 ancilla qubits: both sides 64
    assert all(p.alpha == 64 and p.beta == 64 for p in traj.points)
    assert traj.config["alpha"] == 64 and traj.config["marked_count"] == 1


def test_pinned_ten_bit_instance_runs_at_reduced_iterations():
    # full 25-iteration acceptance run lives in the acceptance suite; here a
    # 2-iteration slice checks the pinned instance wiring end to end
    inst = load_pinned_instance("ec10_a")
    traj = grover_ec_trajectory(inst, seed=0, iterations=2, renyi_degrees=(2,))
    assert len(traj.points) == 1 + 4 * 2
    assert all(set(p.renyi) == {2} for p in traj.points)
    assert 0.0 < traj.results["success_probability"] < 0.2  # far from converged
