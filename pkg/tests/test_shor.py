"""Semi-classical factoring rounds: permutation kernels versus a gate-built
reference, spectrum classification, and order recovery."""

import math

import numpy as np
import pytest

from draper_reference import gate_cm, gate_cmult_accumulate, random_valid_state
from entrack.boundaries import e_half, f_shor, shor_cluster_entropy, shor_entropy_ceiling
from entrack.scenarios.shor import (
    MAX_MODULUS,
    ShorConfig,
    _apply_perm,
    _perm_add_multiple,
    _perm_swap_halves,
    brute_force_order,
    classify_spectrum,
    factors_from_order,
    order_from_phase,
    shor_trajectory,
)
from entrack.statevector import StateVector
from oracles import order_brute

LN2 = math.log(2.0)


# ---------------------------------------------------------------------------
# configuration guards


def test_config_register_sizes():
    cfg = ShorConfig(15, 7)
    assert cfg.n == 4 and cfg.total_qubits == 11
    assert ShorConfig(21, 2).total_qubits == 13


def test_config_rejects_bad_moduli():
    with pytest.raises(ValueError, match="cap"):
        ShorConfig(MAX_MODULUS + 1, 2)
    with pytest.raises(ValueError, match="even"):
        ShorConfig(18, 5)
    with pytest.raises(ValueError, match="prime"):
        ShorConfig(13, 2)
    with pytest.raises(ValueError, match="prime power"):
        ShorConfig(27, 2)
    with pytest.raises(ValueError, match="base"):
        ShorConfig(15, 1)
    with pytest.raises(ValueError, match="base"):
        ShorConfig(15, 15)


# ---------------------------------------------------------------------------
# permutation kernels vs the gate-built modular-arithmetic reference


def test_accumulate_stage_matches_gate_reference():
    rng = np.random.default_rng(1)
    for n, N in ((2, 3), (3, 5), (3, 7)):
        for b in range(1, N):
            if math.gcd(b, N) != 1:
                continue
            gate = random_valid_state(n, N, rng)
            perm = gate.copy()
            gate_cmult_accumulate(gate, n, b, N)
            _apply_perm(perm, _perm_add_multiple(n, b, N, +1))
            assert np.max(np.abs(gate.amps - perm.amps)) <= 1e-12


def test_full_multiply_round_matches_gate_reference():
    rng = np.random.default_rng(2)
    for n, N in ((2, 3), (3, 5), (3, 7)):
        for b in range(2, N):
            if math.gcd(b, N) != 1:
                continue
            gate = random_valid_state(n, N, rng)
            perm = gate.copy()
            gate_cm(gate, n, b, N)
            _apply_perm(perm, _perm_add_multiple(n, b, N, +1))
            _apply_perm(perm, _perm_swap_halves(n))
            _apply_perm(perm, _perm_add_multiple(n, pow(b, -1, N), N, -1))
            assert np.max(np.abs(gate.amps - perm.amps)) <= 1e-12


# ---------------------------------------------------------------------------
# spectrum classification


def test_classify_family_spectra():
    assert classify_spectrum([1.0]) == ("family", 1)
    assert classify_spectrum([0.75, 0.25]) == ("family", 2)
    m = 5
    vals = [(m + 1) / (2 * m)] + [1 / (2 * m)] * (m - 1)
    assert classify_spectrum(vals) == ("family", m)


def test_classify_cluster_spectra():
    assert classify_spectrum([0.5, 0.5]) == ("cluster", 0)
    assert classify_spectrum([0.5, 0.25, 0.25]) == ("cluster", 1)
    assert classify_spectrum([0.5] + [0.125] * 4) == ("cluster", 2)


def test_classify_drops_numerical_zeros():
    assert classify_spectrum([0.75, 0.25, 1e-15, 0.0]) == ("family", 2)


def test_classify_rejects_near_misses():
    assert classify_spectrum([0.6, 0.4]) == ("other", None)
    assert classify_spectrum([0.5, 0.3, 0.2]) == ("other", None)
    # four tail entries of 1/8 are not a power-of-two cluster tail... three are
    assert classify_spectrum([0.5, 1 / 6, 1 / 6, 1 / 6]) == ("other", None)
    assert classify_spectrum([]) == ("other", None)


def test_classified_forms_sit_on_their_curves():
    # family m: entropy f_shor(head); cluster m: entropy (m+2) ln2 / 2
    for m in (2, 3, 4):
        head = (m + 1) / (2 * m)
        vals = np.array([head] + [1 / (2 * m)] * (m - 1))
        assert float(-(vals * np.log(vals)).sum()) == pytest.approx(f_shor(head), abs=1e-12)
    for mm in (0, 1, 2):
        vals = np.array([0.5] + [2.0 ** -(mm + 1)] * (1 << mm))
        assert float(-(vals * np.log(vals)).sum()) == pytest.approx(
            shor_cluster_entropy(mm), abs=1e-12
        )


# ---------------------------------------------------------------------------
# order recovery


def test_brute_force_order_matches_oracle():
    for a, N in ((7, 15), (2, 21), (4, 21), (2, 33), (5, 33)):
        assert brute_force_order(a, N) == order_brute(a, N)


def test_brute_force_order_rejects_noninvertible():
    with pytest.raises(ValueError, match="no order"):
        brute_force_order(3, 15)


def test_order_from_phase_exact_and_reduced():
    # s/r = 1/4 measured exactly on 8 bits
    assert order_from_phase(64, 8, 7, 15) == 4
    # s/r = 2/4 reduces to denominator 2; the multiple search recovers 4
    assert order_from_phase(128, 8, 7, 15) == 4
    # y = 0 carries nothing
    assert order_from_phase(0, 8, 7, 15) is None


def test_order_from_phase_non_dyadic_order():
    # r = 6 is never exactly representable on 10 bits; nearest integers to
    # s 2^10 / 6 still land on the right convergent
    for s in (1, 5):
        y = round(s * (1 << 10) / 6)
        assert order_from_phase(y, 10, 2, 21) == 6


def test_factors_from_order_branches():
    assert factors_from_order(7, 15, 4) == (3, 5)
    assert factors_from_order(2, 21, 6) == (3, 7)
    assert factors_from_order(7, 15, None) is None
    assert factors_from_order(4, 21, 3) is None  # odd order
    # a^(r/2) = N - 1 yields only trivial gcds
    assert factors_from_order(14, 15, 2) is None


# ---------------------------------------------------------------------------
# full runs


def test_shared_factor_short_circuits():
    traj = shor_trajectory(ShorConfig(15, 5))
    assert traj.results["trivial_factor"] is True
    assert traj.results["factors"] == (3, 5)
    assert traj.points == []


def test_run_15_structure():
    traj = shor_trajectory(ShorConfig(15, 7, seed=1))
    res = traj.results
    assert len(traj.points) == 16  # 2n = 8 rounds, two checkpoints each
    by_label = {c["label"]: (c["kind"], c["m"]) for c in res["round_classes"]}
    # the six leading rounds apply b = 7^(2^k) mod 15 = 1: identity, product state
    for k in range(6):
        assert by_label[f"r{k:02d}|pre_swap"] == ("family", 1)
        assert by_label[f"r{k:02d}|post_swap"] == ("family", 1)
    assert by_label["r06|post_swap"] == ("cluster", 0)
    assert by_label["r07|pre_swap"] == ("family", 2)
    assert by_label["r07|post_swap"] == ("cluster", 1)
    points = {p.label: p for p in traj.points}
    assert points["r06|post_swap"].entropy == pytest.approx(LN2, abs=1e-9)
    assert points["r07|pre_swap"].lambda0 == pytest.approx(0.75, abs=1e-9)
    assert points["r07|pre_swap"].entropy == pytest.approx(f_shor(0.75), abs=1e-9)
    assert points["r07|post_swap"].entropy == pytest.approx(1.5 * LN2, abs=1e-9)
    # ceiling with the dedicated register shape
    assert max(p.entropy for p in traj.points) <= shor_entropy_ceiling(4) + 1e-9
    assert res["order"] == 4 and res["factors"] == (3, 5) and res["success"]
    assert res["y"] == sum(b << j for j, b in enumerate(res["bits"]))


def test_run_15_deterministic_per_seed():
    a = shor_trajectory(ShorConfig(15, 7, seed=3))
    b = shor_trajectory(ShorConfig(15, 7, seed=3))
    assert a.results["bits"] == b.results["bits"]
    assert [(p.label, p.lambda0, p.entropy) for p in a.points] == [
        (p.label, p.lambda0, p.entropy) for p in b.points
    ]


def test_run_21_entangles_after_the_first_checkpoint():
    traj = shor_trajectory(ShorConfig(21, 2, seed=0))
    assert len(traj.points) == 20  # 2n = 10 rounds
    # x is still |1> in both control branches before the first swap; every
    # later checkpoint of this base carries entanglement
    assert traj.points[0].entropy == pytest.approx(0.0, abs=1e-9)
    assert all(p.entropy > 0.5 for p in traj.points[1:])
    by_label = {p.label: p for p in traj.points}
    # the plateau rounds concentrate at lambda0 = 2/3
    assert by_label["r08|post_swap"].lambda0 == pytest.approx(2 / 3, abs=1e-3)
    last = by_label["r09|post_swap"]
    assert last.lambda0 == pytest.approx(0.5, abs=1e-9)
    assert last.entropy == pytest.approx(1.242408, abs=1e-6)
    assert max(p.entropy for p in traj.points) <= e_half(32, 256) + 0.05
    assert traj.results["order"] == 6
    assert traj.results["factors"] == (3, 7)


def test_zero_phase_measurement_reports_failure():
    traj = shor_trajectory(ShorConfig(15, 7, seed=0))
    assert traj.results["y"] == 0
    assert traj.results["order"] is None
    assert traj.results["factors"] is None
    assert traj.results["success"] is False
