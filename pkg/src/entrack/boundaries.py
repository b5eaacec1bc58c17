"""Analytic boundary curves for entanglement trajectories.

Tight curves (f1, f2, f3, exact_upper) delimit the region that any spectrum
with a given dominant eigenvalue can reach. Flexible curves (flexible_E,
flexible_gap, renyi_flexible) are conditional means over random states,
assembled from the limiting spectral density of Wishart matrices; typical
states concentrate on them but nothing forbids crossing. Shor-specific
curves (f_shor, g_shor, cluster entropies) describe the spectra that the
modular-exponentiation rounds produce.

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import closed_form_integral

__all__ = [
    "f1", "f2", "f3", "exact_upper",
    "mpd_edges", "mpd_density", "mpd_atom",
    "page_entropy", "flexible_E", "e_half",
    "f_shor", "shor_cluster_entropy", "shor_entropy_ceiling",
    "g1", "g3", "flexible_gap", "g_shor",
    "renyi_flexible",
    "BoundaryCurve", "sample_curve", "CURVES",
]


def _check_unit(lmbda0: float, lo_open: bool = True, hi: float = 1.0, name="lambda0"):
    if lmbda0 <= 0.0 if lo_open else lmbda0 < 0.0:
        raise ValueError(f"{name}={lmbda0!r} outside domain")
    if lmbda0 > hi:
        raise ValueError(f"{name}={lmbda0!r} outside domain")


def f1(lmbda0: float) -> float:
    """Lower tight bound: the rest of the weight sits on a single eigenvalue."""
    _check_unit(lmbda0)
    if lmbda0 == 1.0:
        return 0.0
    r = 1.0 - lmbda0
    return -lmbda0 * math.log(lmbda0) - r * math.log(r)


def f2(lmbda0: float) -> float:
    """-ln lambda0; meaningful as a bound where 1/lambda0 is an integer."""
    _check_unit(lmbda0)
    return -math.log(lmbda0)


def f3(lmbda0: float, alpha: int) -> float:
    """Upper bound with the remaining weight spread over ~alpha eigenvalues."""
    if alpha < 2:
        raise ValueError(f"alpha={alpha} must be >= 2")
    if not (1.0 / alpha <= lmbda0 <= 1.0):
        raise ValueError(f"lambda0={lmbda0!r} outside [1/{alpha}, 1]")
    return (1.0 - lmbda0) * math.log(alpha) + f1(lmbda0)


def exact_upper(lmbda0: float, alpha: int) -> float:
    """Exact upper tight bound: alpha - 1 equal remaining eigenvalues."""
    if alpha < 2:
        raise ValueError(f"alpha={alpha} must be >= 2")
    if not (1.0 / alpha <= lmbda0 <= 1.0):
        raise ValueError(f"lambda0={lmbda0!r} outside [1/{alpha}, 1]")
    if lmbda0 == 1.0:
        return 0.0
    r = 1.0 - lmbda0
    return -lmbda0 * math.log(lmbda0) - r * math.log(r / (alpha - 1))


# ---------------------------------------------------------------------------
# limiting spectral density of (1/beta) X X-dagger, entry variance sigma^2,
# shape ratio lam = alpha/beta


def mpd_edges(sigma: float, lam: float):
    if sigma <= 0.0 or lam <= 0.0:
        raise ValueError(f"need sigma > 0 and lam > 0, got {sigma}, {lam}")
    s2 = sigma * sigma
    root = math.sqrt(lam)
    return s2 * (1.0 - root) ** 2, s2 * (1.0 + root) ** 2


def mpd_density(x, sigma: float, lam: float):
    """Continuous part of the limiting density at x (scalar or array).

    For lam > 1 there is additionally a point mass at zero, reported
    separately by mpd_atom.
    """
    lo, hi = mpd_edges(sigma, lam)
    x = np.asarray(x, dtype=float)
    inside = (x > lo) & (x < hi)
    out = np.zeros_like(x)
    xi = x[inside]
    out[inside] = np.sqrt((hi - xi) * (xi - lo)) / (2.0 * math.pi * sigma * sigma * lam * xi)
    return out if out.ndim else float(out)


def mpd_atom(lam: float) -> float:
    """Weight of the point mass at zero (nonzero only for lam > 1)."""
    if lam <= 0.0:
        raise ValueError(f"lam must be positive, got {lam}")
    return max(0.0, 1.0 - 1.0 / lam)


# ---------------------------------------------------------------------------
# average-entropy curves


def page_entropy(alpha: int, beta: int) -> float:
    """Average subsystem entropy of a random pure state: ln a - a/(2b)."""
    if alpha > beta:
        raise ValueError(f"alpha={alpha} must not exceed beta={beta}")
    return math.log(alpha) - alpha / (2.0 * beta)


def flexible_E(lmbda0: float, alpha: int, beta: int) -> float:
    """Mean entropy of random states conditioned on the dominant eigenvalue.

    (1 - l)(ln alpha - ln(1 - l) - alpha/(2 beta)) - l ln l. The l -> 0 limit
    is the average-entropy law and beta -> infinity recovers f3. l = 1 is
    accepted and returns the limit 0.
    """
    if alpha > beta:
        raise ValueError(f"alpha={alpha} must not exceed beta={beta}")
    if not (0.0 < lmbda0 <= 1.0):
        raise ValueError(f"lambda0={lmbda0!r} outside (0, 1]")
    if lmbda0 == 1.0:
        return 0.0
    r = 1.0 - lmbda0
    return r * (math.log(alpha) - math.log(r) - alpha / (2.0 * beta)) - lmbda0 * math.log(lmbda0)


def e_half(alpha: int, beta: int) -> float:
    """flexible_E at lambda0 = 1/2, the ceiling that structured runs press against."""
    if alpha > beta:
        raise ValueError(f"alpha={alpha} must not exceed beta={beta}")
    return 0.5 * math.log(alpha) - alpha / (4.0 * beta) + math.log(2.0)


def shor_entropy_ceiling(n: int) -> float:
    """e_half for the factoring run's register split alpha=2^n, beta=2^(n+3)."""
    return (n + 2) / 2.0 * math.log(2.0) - 1.0 / 32.0


# ---------------------------------------------------------------------------
# curves specific to the factoring rounds


def f_shor(x: float) -> float:
    """Entropy of the two-level-plus-plateau family spectra, on (1/2, 1]."""
    if not (0.5 < x <= 1.0):
        raise ValueError(f"x={x!r} outside (1/2, 1]")
    if x == 1.0:
        return 0.0
    return -x * math.log(x) - (1.0 - x) * math.log(x - 0.5)


def shor_cluster_entropy(m: int) -> float:
    """Entropy of the spectrum {1/2} + 2^m copies of 2^-(m+1): (m+2) ln2 / 2."""
    if m < 0 or m != int(m):
        raise ValueError(f"cluster index must be a nonnegative integer, got {m!r}")
    return (int(m) + 2) * math.log(2.0) / 2.0


def g1(lmbda0: float) -> float:
    """Tight gap bound, remaining weight on one eigenvalue."""
    if not (0.0 < lmbda0 < 1.0):
        raise ValueError(f"lambda0={lmbda0!r} outside (0, 1)")
    return math.log(lmbda0) - math.log(1.0 - lmbda0)


def g3(lmbda0: float, alpha: int) -> float:
    """Tight gap bound, remaining weight spread over alpha eigenvalues."""
    if alpha < 2:
        raise ValueError(f"alpha={alpha} must be >= 2")
    if not (0.0 < lmbda0 < 1.0):
        raise ValueError(f"lambda0={lmbda0!r} outside (0, 1)")
    return math.log(lmbda0) - math.log((1.0 - lmbda0) / alpha)


def flexible_gap(lmbda0: float, alpha: int, beta: int) -> float:
    """Mean-field gap: lambda1 sits at the right edge of the bulk density."""
    if alpha > beta:
        raise ValueError(f"alpha={alpha} must not exceed beta={beta}")
    if not (0.0 < lmbda0 < 1.0):
        raise ValueError(f"lambda0={lmbda0!r} outside (0, 1)")
    edge_factor = (1.0 + math.sqrt(alpha / beta)) ** 2
    return math.log(lmbda0) - math.log((1.0 - lmbda0) / alpha * edge_factor)


def g_shor(x: float) -> float:
    """Gap form of the factoring family: ln x + ln 2 - ln(2x - 1)."""
    if not (0.5 < x <= 1.0):
        raise ValueError(f"x={x!r} outside (1/2, 1]")
    return math.log(x) + math.log(2.0) - math.log(2.0 * x - 1.0)


# ---------------------------------------------------------------------------
# Renyi flexible curves (equal-sided split)


def _bulk_moment(d: int, var: float) -> float:
    # d-th moment of the square-shape bulk density with variance parameter
    # `var`: (1 / (2 pi var)) * integral_0^(4 var) x^(d-1) sqrt((4 var - x) x) dx
    return closed_form_integral("moment", 0.0, 4.0 * var, d=d) / (2.0 * math.pi * var)


def renyi_flexible(lmbda0: float, alpha: int, d) -> float:
    """Mean Renyi entropy of degree d at fixed lambda0, for alpha = beta.

    d = 1 means the von Neumann limit. Degrees 2..6 are supported; 2 has a
    short closed form, 3..6 are assembled from the bulk moment table.
    """
    if not (0.0 < lmbda0 <= 1.0):
        raise ValueError(f"lambda0={lmbda0!r} outside (0, 1]")
    if d == 1:
        if lmbda0 == 1.0:
            return 0.0
        r = 1.0 - lmbda0
        return r * (math.log(alpha) - math.log(r) - 0.5) - lmbda0 * math.log(lmbda0)
    if d == 2:
        return -math.log((lmbda0 * lmbda0 * (alpha + 2.0) - 4.0 * lmbda0 + 2.0) / alpha)
    if d in (3, 4, 5, 6):
        var = (1.0 - lmbda0) / alpha
        total = lmbda0**d + alpha * _bulk_moment(int(d), var)
        return math.log(total) / (1.0 - d)
    raise ValueError(f"unsupported Renyi degree {d!r}; supported: 1 (limit), 2..6")


# ---------------------------------------------------------------------------
# curve sampling for export


@dataclass
class BoundaryCurve:
    name: str
    params: dict
    samples: list  # [(x, value)] strictly increasing in x
    meta: dict = field(default_factory=dict)


def _rho_bulk_edge(alpha: int, beta: int) -> float:
    # right edge of the spectral bulk of an unconditioned random reduced
    # matrix; below it a fixed dominant eigenvalue is atypical
    return (1.0 + math.sqrt(alpha / beta)) ** 2 / alpha


# name -> (domain predicate builder, evaluator, required params)
CURVES = {
    "f1": (lambda p: lambda x: 0.0 < x <= 1.0, lambda p, x: f1(x), ()),
    "f2": (lambda p: lambda x: 0.0 < x <= 1.0, lambda p, x: f2(x), ()),
    "f3": (lambda p: lambda x: 1.0 / p["alpha"] <= x <= 1.0, lambda p, x: f3(x, p["alpha"]), ("alpha",)),
    "exact_upper": (lambda p: lambda x: 1.0 / p["alpha"] <= x <= 1.0,
                    lambda p, x: exact_upper(x, p["alpha"]), ("alpha",)),
    "flexible_E": (lambda p: lambda x: 0.0 < x <= 1.0,
                   lambda p, x: flexible_E(x, p["alpha"], p["beta"]), ("alpha", "beta")),
    "f_shor": (lambda p: lambda x: 0.5 < x <= 1.0, lambda p, x: f_shor(x), ()),
    "g1": (lambda p: lambda x: 0.0 < x < 1.0, lambda p, x: g1(x), ()),
    "g3": (lambda p: lambda x: 0.0 < x < 1.0, lambda p, x: g3(x, p["alpha"]), ("alpha",)),
    "flexible_gap": (lambda p: lambda x: 0.0 < x < 1.0,
                     lambda p, x: flexible_gap(x, p["alpha"], p["beta"]), ("alpha", "beta")),
    "g_shor": (lambda p: lambda x: 0.5 < x <= 1.0, lambda p, x: g_shor(x), ()),
    "renyi_d1": (lambda p: lambda x: 0.0 < x <= 1.0,
                 lambda p, x: renyi_flexible(x, p["alpha"], 1), ("alpha",)),
    "renyi_d2": (lambda p: lambda x: 0.0 < x <= 1.0,
                 lambda p, x: renyi_flexible(x, p["alpha"], 2), ("alpha",)),
    "mpd_density": (lambda p: lambda x: x >= 0.0,
                    lambda p, x: float(mpd_density(x, p["sigma"], p["lam"])), ("sigma", "lam")),
}


def sample_curve(name: str, params: dict, x_grid) -> BoundaryCurve:
    """Deterministically sample a named curve on a grid.

    Grid points outside the curve's domain are dropped and counted in
    meta["clipped"], never fatal. flexible_E additionally marks samples left
    of the unconditioned bulk edge as extrapolated.
    """
    if name not in CURVES:
        raise ValueError(f"unknown curve {name!r}; known: {sorted(CURVES)}")
    domain_of, evaluate, required = CURVES[name]
    params = dict(params or {})
    missing = [k for k in required if k not in params]
    if missing:
        raise ValueError(f"curve {name!r} needs params {missing}")
    in_domain = domain_of(params)
    xs = [float(x) for x in x_grid]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("x grid must be strictly increasing")
    samples, clipped = [], 0
    for x in xs:
        if in_domain(x):
            samples.append((x, evaluate(params, x)))
        else:
            clipped += 1
    meta: dict = {"clipped": clipped}
    if name == "flexible_E":
        edge = _rho_bulk_edge(params["alpha"], params["beta"])
        meta["bulk_edge"] = edge
        meta["extrapolated"] = [x < edge for x, _ in samples]
        # the lambda0 -> 0 limit of this curve is the unconditioned average
        meta["page_endpoint"] = page_entropy(params["alpha"], params["beta"])
    return BoundaryCurve(name, params, samples, meta)
