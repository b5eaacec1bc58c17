"""Boundary curves: pinned values, analytic identities, and sampling."""

import math

import numpy as np
import pytest

from entrack.boundaries import (
    CURVES,
    e_half,
    exact_upper,
    f1,
    f2,
    f3,
    f_shor,
    flexible_E,
    flexible_gap,
    g1,
    g3,
    g_shor,
    mpd_atom,
    mpd_density,
    mpd_edges,
    page_entropy,
    renyi_flexible,
    sample_curve,
    shor_cluster_entropy,
    shor_entropy_ceiling,
)
from entrack.numerics import quadrature

LN2 = math.log(2.0)


# ---------------------------------------------------------------------------
# tight curves


def test_f1_pinned_values():
    assert f1(0.5) == pytest.approx(LN2, abs=1e-12)
    assert f1(1.0) == 0.0
    assert f1(0.4) == pytest.approx(0.673012, abs=1e-6)


def test_f2_is_min_entropy_curve():
    assert f2(0.5) == pytest.approx(LN2, abs=1e-12)
    assert f2(0.25) == pytest.approx(2 * LN2, abs=1e-12)


def test_f3_pinned_value():
    assert f3(0.4, 32) == pytest.approx(2.752454, abs=1e-6)
    assert f3(0.5, 16) == pytest.approx(0.5 * math.log(16) + LN2, abs=1e-12)


def test_exact_upper_pinned_values():
    # -0.4 ln 0.4 - 0.6 ln(0.6/31); the sub-ppm decimal is pinned from the
    # formula itself, evaluated at high precision
    assert exact_upper(0.4, 32) == pytest.approx(2.7334039897003444, abs=1e-12)
    assert exact_upper(1.0, 8) == 0.0
    # lambda0 at the floor forces the flat spectrum: full entropy
    assert exact_upper(1 / 32, 32) == pytest.approx(math.log(32), abs=1e-12)


def test_tight_curve_ordering():
    # f1 <= exact_upper <= f3 across the shared domain
    for alpha in (4, 32, 128):
        for x in np.linspace(1.0 / alpha, 1.0, 41):
            lo, mid, hi = f1(x), exact_upper(x, alpha), f3(x, alpha)
            assert lo <= mid + 1e-9
            assert mid <= hi + 1e-9


def test_tight_domain_errors():
    with pytest.raises(ValueError):
        f1(0.0)
    with pytest.raises(ValueError):
        f2(1.5)
    with pytest.raises(ValueError):
        f3(0.1, 4)  # below 1/alpha
    with pytest.raises(ValueError):
        exact_upper(0.5, 1)


# ---------------------------------------------------------------------------
# average-entropy curves


def test_page_entropy_pinned():
    # ln 128 - 128/1024; the trailing digits come from the formula itself
    assert page_entropy(128, 512) == pytest.approx(4.727030263919617, abs=1e-12)
    assert page_entropy(2, 2) == pytest.approx(LN2 - 0.5, abs=1e-12)


def test_flexible_E_limits_and_relations():
    # lambda0 -> 0 recovers the unconditioned average
    assert flexible_E(1e-12, 128, 512) == pytest.approx(page_entropy(128, 512), abs=1e-9)
    # beta -> infinity recovers the spread upper bound
    assert flexible_E(0.3, 64, 2**40) == pytest.approx(f3(0.3, 64), abs=1e-9)
    assert flexible_E(1.0, 8, 8) == 0.0
    # finite beta always sits below f3
    for x in np.linspace(0.05, 0.95, 19):
        assert flexible_E(x, 64, 128) <= f3(x, 64) + 1e-12


def test_e_half_pinned_and_consistent():
    assert e_half(64, 512) == pytest.approx(2.741339, abs=1e-6)
    assert e_half(64, 512) == pytest.approx(flexible_E(0.5, 64, 512), abs=1e-12)


def test_shor_ceiling_equals_e_half_at_register_shape():
    # alpha = 2^n, beta = 2^(n+3) reproduces the closed form (n+2)/2 ln2 - 1/32
    assert shor_entropy_ceiling(6) == pytest.approx(2.741339, abs=1e-6)
    for n in (2, 4, 6, 8):
        assert shor_entropy_ceiling(n) == pytest.approx(e_half(2**n, 2 ** (n + 3)), abs=1e-12)


def test_flexible_rejects_bad_shapes():
    with pytest.raises(ValueError):
        page_entropy(8, 4)
    with pytest.raises(ValueError):
        flexible_E(0.5, 8, 4)
    with pytest.raises(ValueError):
        flexible_E(0.0, 4, 8)


# ---------------------------------------------------------------------------
# factoring-round curves


def test_f_shor_pinned_values():
    assert f_shor(0.75) == pytest.approx(0.562335, abs=1e-6)
    assert f_shor(1.0) == 0.0
    with pytest.raises(ValueError):
        f_shor(0.5)


def test_f_shor_matches_family_spectra():
    # spectrum {(m+1)/(2m)} + (m-1) copies of 1/(2m) lies exactly on the curve
    for m in range(2, 8):
        x = (m + 1) / (2 * m)
        vals = np.array([x] + [1 / (2 * m)] * (m - 1))
        direct = float(-np.sum(vals * np.log(vals)))
        assert f_shor(x) == pytest.approx(direct, abs=1e-12)


def test_cluster_entropy_ladder():
    assert shor_cluster_entropy(0) == pytest.approx(LN2, abs=1e-12)
    assert shor_cluster_entropy(1) == pytest.approx(1.5 * LN2, abs=1e-12)
    # direct evaluation of {1/2} + 2^m copies of 2^-(m+1)
    for m in range(4):
        vals = np.array([0.5] + [2.0 ** -(m + 1)] * (1 << m))
        direct = float(-np.sum(vals * np.log(vals)))
        assert shor_cluster_entropy(m) == pytest.approx(direct, abs=1e-12)
    with pytest.raises(ValueError):
        shor_cluster_entropy(-1)


# ---------------------------------------------------------------------------
# gap curves


def test_gap_curves_pinned_and_ordered():
    assert g1(0.75) == pytest.approx(math.log(3), abs=1e-12)
    assert g3(0.5, 16) == pytest.approx(math.log(16), abs=1e-12)
    assert flexible_gap(0.5, 128, 128) == pytest.approx(math.log(32), abs=1e-9)
    assert flexible_gap(0.5, 128, 128) == pytest.approx(3.465736, abs=1e-6)
    for x in np.linspace(0.05, 0.95, 19):
        # spreading the remainder can only widen the gap bound
        assert g1(x) <= g3(x, 64) + 1e-12
        # the bulk-edge correction pulls flexible_gap below g3
        assert flexible_gap(x, 64, 128) <= g3(x, 64) + 1e-12


def test_g_shor_on_family_points():
    # family spectra have gap ln(lambda0 / lambda1) = ln(m + 1)
    for m in range(2, 8):
        x = (m + 1) / (2 * m)
        assert g_shor(x) == pytest.approx(math.log(m + 1), abs=1e-12)
    with pytest.raises(ValueError):
        g_shor(0.5)


# ---------------------------------------------------------------------------
# limiting spectral density


def test_mpd_edges_pinned():
    lo, hi = mpd_edges(1.0, 0.5)
    assert hi == pytest.approx((1 + math.sqrt(0.5)) ** 2, abs=1e-12)
    assert hi == pytest.approx(2.914, abs=1e-3)
    assert lo == pytest.approx((1 - math.sqrt(0.5)) ** 2, abs=1e-12)


def test_mpd_density_mass_and_mean():
    for lam in (0.5, 1.0, 2.0):
        lo, hi = mpd_edges(1.0, lam)
        mass = quadrature(lambda x: mpd_density(x, 1.0, lam), max(lo, 0.0), hi, tol=1e-8)
        mean = quadrature(lambda x: x * mpd_density(x, 1.0, lam), max(lo, 0.0), hi, tol=1e-8)
        assert mass + mpd_atom(lam) == pytest.approx(1.0, abs=1e-7)
        assert mean == pytest.approx(1.0, abs=1e-7)  # first moment is sigma^2


def test_mpd_density_zero_outside_support():
    lo, hi = mpd_edges(1.0, 0.5)
    assert mpd_density(lo - 1e-6, 1.0, 0.5) == 0.0
    assert mpd_density(hi + 1e-6, 1.0, 0.5) == 0.0
    arr = mpd_density(np.array([0.0, 1.0, 10.0]), 1.0, 0.5)
    assert arr[0] == 0.0 and arr[1] > 0.0 and arr[2] == 0.0


def test_mpd_atom_only_above_square():
    assert mpd_atom(0.5) == 0.0
    assert mpd_atom(2.0) == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(ValueError):
        mpd_edges(0.0, 0.5)


# ---------------------------------------------------------------------------
# Renyi flexible family

CATALAN = {2: 2.0, 3: 5.0, 4: 14.0, 5: 42.0, 6: 132.0}


def test_renyi_flexible_d1_is_equal_sided_entropy_curve():
    for x in np.linspace(0.05, 1.0, 20):
        assert renyi_flexible(x, 128, 1) == pytest.approx(flexible_E(x, 128, 128), abs=1e-12)


def test_renyi_flexible_d2_closed_form_identity():
    for x in np.linspace(0.05, 0.95, 19):
        direct = -math.log(x * x + 2.0 * (1.0 - x) ** 2 / 128)
        assert renyi_flexible(x, 128, 2) == pytest.approx(direct, abs=1e-12)
    assert renyi_flexible(1.0, 64, 2) == pytest.approx(0.0, abs=1e-12)


def test_renyi_flexible_higher_degrees_are_catalan_moments():
    # power sums of the bulk reduce to Catalan-number moments of its density
    for d, cat in CATALAN.items():
        for x in (0.2, 0.5, 0.8):
            total = x**d + cat * (1.0 - x) ** d / 128 ** (d - 1)
            assert renyi_flexible(x, 128, d) == pytest.approx(
                math.log(total) / (1.0 - d), abs=1e-12
            )


def test_renyi_flexible_rejects_bad_degree_and_domain():
    with pytest.raises(ValueError, match="unsupported Renyi degree"):
        renyi_flexible(0.5, 16, 7)
    with pytest.raises(ValueError):
        renyi_flexible(0.0, 16, 2)


# ---------------------------------------------------------------------------
# curve sampling


def test_curve_registry_names():
    assert set(CURVES) == {
        "f1", "f2", "f3", "exact_upper", "flexible_E", "f_shor",
        "g1", "g3", "flexible_gap", "g_shor", "renyi_d1", "renyi_d2",
        "mpd_density",
    }


def test_sample_curve_clips_out_of_domain():
    c = sample_curve("f_shor", {}, [0.25, 0.5, 0.75, 1.0])
    assert c.meta["clipped"] == 2  # 0.25 and the open endpoint 0.5
    assert [x for x, _ in c.samples] == [0.75, 1.0]
    assert c.samples[0][1] == pytest.approx(f_shor(0.75), abs=1e-15)


def test_sample_curve_flexible_meta():
    grid = list(np.linspace(1 / 128, 1.0, 64))
    c = sample_curve("flexible_E", {"alpha": 128, "beta": 512}, grid)
    edge = (1 + math.sqrt(128 / 512)) ** 2 / 128
    assert c.meta["bulk_edge"] == pytest.approx(edge, abs=1e-12)
    assert c.meta["page_endpoint"] == pytest.approx(4.727030263919617, abs=1e-12)
    flags = c.meta["extrapolated"]
    assert len(flags) == len(c.samples)
    assert flags == [x < edge for x, _ in c.samples]
    assert any(flags) and not all(flags)


def test_sample_curve_validation():
    with pytest.raises(ValueError, match="unknown curve"):
        sample_curve("f9", {}, [0.5])
    with pytest.raises(ValueError, match="needs params"):
        sample_curve("f3", {}, [0.5])
    with pytest.raises(ValueError, match="strictly increasing"):
        sample_curve("f1", {}, [0.5, 0.5])


def test_sample_curve_mpd_density():
    c = sample_curve("mpd_density", {"sigma": 1.0, "lam": 0.5}, [0.0, 1.0, 2.0, 3.5])
    got = dict(c.samples)
    assert got[1.0] == pytest.approx(float(mpd_density(1.0, 1.0, 0.5)), abs=1e-15)
    assert got[3.5] == 0.0  # in range of the sampler, outside the bulk
    assert c.meta["clipped"] == 0
