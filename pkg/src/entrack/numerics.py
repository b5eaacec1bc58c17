"""Dense Hermitian eigenvalues, eigenvalue bookkeeping, and the handful of
closed-form integrals that the analytic boundary curves are assembled from,
with an adaptive quadrature fallback used as their cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

__all__ = [
    "Spectrum",
    "eigvalsh",
    "clamp_psd_eigenvalues",
    "closed_form_integral",
    "quadrature",
    "QuadratureError",
    "lanczos_smallest",
    "INTEGRAL_KINDS",
]

# eigenvalues from a PSD source may dip this far below zero before we call it
# a real violation rather than roundoff
PSD_FLOOR = -1e-10

HERMITIAN_TOL = 1e-10


class QuadratureError(RuntimeError):
    """Raised when adaptive refinement cannot reach the requested tolerance.

    Carries the best estimate and its error bound so callers can decide.
    """

    def __init__(self, msg, estimate, error_bound):
        super().__init__(msg)
        self.estimate = estimate
        self.error_bound = error_bound


@dataclass
class Spectrum:
    """Descending real eigenvalues of a subsystem, with both side dimensions.

    `values` sums to 1 when the source matrix had unit trace; raw matrix
    ensembles (no normalization) also use this container, so the sum-to-1
    check lives in `from_density`, not here.
    """

    values: np.ndarray
    alpha: int
    beta: int

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.alpha > self.beta:
            raise ValueError(f"alpha={self.alpha} must not exceed beta={self.beta}")
        if self.values.size != self.alpha:
            raise ValueError(f"expected {self.alpha} eigenvalues, got {self.values.size}")
        if np.any(np.diff(self.values) > 1e-12):
            raise ValueError("eigenvalues must be sorted descending")

    @classmethod
    def from_density(cls, raw: np.ndarray, alpha: int, beta: int) -> "Spectrum":
        """Build from trace-1 matrix eigenvalues: sort, clamp, check the sum."""
        w = np.sort(np.asarray(raw, dtype=float))[::-1]
        w = clamp_psd_eigenvalues(w)
        total = float(w.sum())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"spectrum sums to {total!r}, expected 1 within 1e-9")
        return cls(w, alpha, beta)

    @property
    def lambda0(self) -> float:
        return float(self.values[0])


def clamp_psd_eigenvalues(w: np.ndarray, floor: float = PSD_FLOOR) -> np.ndarray:
    """Zero out tiny negative roundoff; anything below `floor` is an error."""
    w = np.asarray(w, dtype=float)
    worst = float(w.min(initial=0.0))
    if worst < floor:
        raise ValueError(f"eigenvalue {worst:.3e} below PSD floor {floor:.1e}")
    out = w.copy()
    out[out < 0.0] = 0.0
    return out


def eigvalsh(m: np.ndarray, herm_tol: float = HERMITIAN_TOL) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, descending.

    Input is rejected (with the worst offending entry named) when it is not
    square or not Hermitian within `herm_tol`. Backed by LAPACK; the test
    suite certifies the result against an independently coded solver.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    asym = np.abs(m - m.conj().T)
    worst = float(asym.max(initial=0.0))
    if worst > herm_tol:
        i, j = np.unravel_index(int(asym.argmax()), asym.shape)
        raise ValueError(
            f"matrix not Hermitian: |M[{i},{j}] - conj(M[{j},{i}])| = {worst:.3e} "
            f"exceeds {herm_tol:.1e}"
        )
    w = np.linalg.eigvalsh(m)
    return np.ascontiguousarray(w[::-1])


# ---------------------------------------------------------------------------
# closed-form integrals
#
# All four kinds share the semicircle profile sqrt((b - x)(x - a)). The
# moment table carries the x^(d-1) weight used to assemble higher-degree
# Renyi bounds; coefficients below are exact rationals.

#   integral_0^t x^(d-1) sqrt((t - x) x) dx = MOMENT_COEFF[d] * pi * t^(d+1)
MOMENT_COEFF = {2: 1 / 16, 3: 5 / 128, 4: 7 / 256, 5: 21 / 1024, 6: 33 / 2048}

INTEGRAL_KINDS = ("semicircle", "log_semicircle", "log_semicircle_origin", "moment")


def closed_form_integral(kind: str, a: float, b: float, d: int | None = None) -> float:
    """Closed form of one of the semicircle-profile integrals on [a, b].

    kind:
      semicircle             integral of sqrt((b-x)(x-a))
      log_semicircle         same with a ln(x) weight, a >= 0
      log_semicircle_origin  the a = 0 case in its reduced form
      moment                 x^(d-1) weight with a = 0, integer d in [2, 6]
    """
    if not (0.0 <= a <= b):
        raise ValueError(f"need 0 <= a <= b, got a={a}, b={b}")
    if kind == "semicircle":
        return math.pi / 8.0 * (b - a) ** 2
    if kind == "log_semicircle":
        if a == b:
            return 0.0
        s = math.sqrt(a * b)
        return (math.pi / 16.0) * (
            a * a
            + 6.0 * a * b
            + b * b
            - 4.0 * s * (a + b)
            - 4.0 * (a - b) ** 2 * math.log(2.0)
            + 2.0 * (a - b) ** 2 * math.log(a + b + 2.0 * s)
        )
    if kind == "log_semicircle_origin":
        if a != 0.0:
            raise ValueError("log_semicircle_origin requires a = 0")
        if b == 0.0:
            return 0.0
        return (math.pi / 16.0) * (2.0 * b * b * math.log(b) - b * b * (4.0 * math.log(2.0) - 1.0))
    if kind == "moment":
        if a != 0.0:
            raise ValueError("moment requires a = 0")
        if d is None or d != int(d) or int(d) not in MOMENT_COEFF:
            raise ValueError(f"unsupported moment degree {d!r}; table covers d in [2, 6]")
        return MOMENT_COEFF[int(d)] * math.pi * b ** (int(d) + 1)
    raise ValueError(f"unknown integral kind {kind!r}; known: {INTEGRAL_KINDS}")


def lanczos_smallest(matvec, dim: int, v0: np.ndarray, tol: float = 1e-10,
                     max_iter: int | None = None):
    """Smallest eigenpair of a real symmetric operator, matrix-free.

    Lanczos with full reorthogonalization; the Krylov basis is kept dense so
    loss of orthogonality cannot poison the Ritz values. Returns
    (eigenvalue, eigenvector). Raises with the best residual if the
    iteration budget runs out.
    """
    from scipy.linalg import eigh_tridiagonal

    if max_iter is None:
        max_iter = min(dim, 400)
    q = np.asarray(v0, dtype=float)
    q = q / np.linalg.norm(q)
    basis = [q]
    alphas: list[float] = []
    betas: list[float] = []
    best = (math.inf, None, math.inf)  # energy, vector, residual
    for _ in range(max_iter):
        w = matvec(basis[-1])
        alphas.append(float(basis[-1] @ w))
        # full reorthogonalization, twice over for floating-point hygiene
        qmat = np.array(basis)
        for _pass in range(2):
            w = w - qmat.T @ (qmat @ w)
        beta = float(np.linalg.norm(w))
        theta, y = eigh_tridiagonal(alphas, betas, select="i", select_range=(0, 0))
        energy, coeff = float(theta[0]), y[:, 0]
        residual_est = abs(beta * coeff[-1])
        if residual_est < tol or beta < 1e-13:
            vec = qmat.T @ coeff
            vec /= np.linalg.norm(vec)
            true_res = float(np.linalg.norm(matvec(vec) - energy * vec))
            if true_res < best[2]:
                best = (energy, vec, true_res)
            if best[2] < tol or beta < 1e-13:
                return best[0], best[1]
        betas.append(beta)
        basis.append(w / beta)
    # budget exhausted: report the best Ritz pair and its actual residual
    qmat = np.array(basis[:-1])
    theta, y = eigh_tridiagonal(alphas, betas[:-1], select="i", select_range=(0, 0))
    vec = qmat.T @ y[:, 0]
    vec /= np.linalg.norm(vec)
    res = float(np.linalg.norm(matvec(vec) - float(theta[0]) * vec))
    res = min(res, best[2])
    raise RuntimeError(
        f"Lanczos did not converge in {max_iter} iterations; best residual {res:.3e}"
    )


def quadrature(f, a: float, b: float, tol: float = 1e-9) -> float:
    """Adaptive integral of `f` on [a, b] to absolute tolerance `tol`.

    Handles the square-root edge singularities of the density integrands.
    Non-convergence raises QuadratureError carrying the best estimate and
    its error bound.
    """
    if b < a:
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    if a == b:
        return 0.0
    out = integrate.quad(f, a, b, epsabs=0.1 * tol, epsrel=1e-12, limit=300, full_output=1)
    val, err = out[0], out[1]
    if err > max(tol, 1e-13 * abs(val)):
        raise QuadratureError(
            f"quadrature did not reach tol={tol:g} on [{a}, {b}]: "
            f"estimate {val!r}, error bound {err:.3e}",
            val,
            err,
        )
    return float(val)
