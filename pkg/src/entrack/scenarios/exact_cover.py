"""Exact Cover instances and the interpolated-Hamiltonian ground-state walk.

A clause over three bit positions is satisfied iff exactly one of the three
bits is 1. The diagonal penalty for a clause is (b_i + b_j + b_k - 1)^2,
zero exactly on satisfying assignments. The driver term acts as
(n/2) psi - (1/2) sum_i flip_i(psi), whose ground state is the uniform
superposition at energy 0. Ground states along the interpolation are found
matrix-free with a Lanczos eigensolver; nothing dense is ever materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from ..numerics import lanczos_smallest
from ..rng import Stream, root_stream
from ..spectral import bipartition, trajectory_point
from ..statevector import StateVector
from .trajectory import Trajectory

__all__ = [
    "ECInstance", "parse_instance", "format_instance", "load_instance",
    "pinned_instance_names", "load_pinned_instance",
    "solutions", "penalty_vector", "ECHamiltonians", "ec_hamiltonians",
    "ec_ground_state", "adiabatic_trajectory", "generate_instance",
]

GROUND_STATE_MAX_QUBITS = 14
RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class ECInstance:
    n: int
    clauses: tuple
    known_solution: str | None = None

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need at least 3 bits")
        for cl in self.clauses:
            if len(cl) != 3 or len(set(cl)) != 3:
                raise ValueError(f"clause {cl} must have three distinct positions")
            if any(not (0 <= i < self.n) for i in cl):
                raise ValueError(f"clause {cl} has positions outside [0, {self.n})")
        if self.known_solution is not None:
            if len(self.known_solution) != self.n or set(self.known_solution) - {"0", "1"}:
                raise ValueError("known_solution must be an n-character bitstring")


def parse_instance(text: str) -> ECInstance:
    """Plain-text format: line 1 `n c`, then c lines of three 0-based indices;
    an optional `# solution <bitstring>` comment records the known solution."""
    solution = None
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts[:1] == ["solution"] and len(parts) == 2:
                solution = parts[1]
            continue
        rows.append(line)
    if not rows:
        raise ValueError("empty instance text")
    head = rows[0].split()
    if len(head) != 2:
        raise ValueError(f"bad header line {rows[0]!r}, expected 'n c'")
    n, c = int(head[0]), int(head[1])
    if len(rows) - 1 != c:
        raise ValueError(f"header promises {c} clauses, found {len(rows) - 1}")
    clauses = tuple(tuple(int(t) for t in r.split()) for r in rows[1:])
    return ECInstance(n, clauses, solution)


def format_instance(inst: ECInstance) -> str:
    lines = [f"{inst.n} {len(inst.clauses)}"]
    lines += [f"{i} {j} {k}" for i, j, k in inst.clauses]
    if inst.known_solution is not None:
        lines.append(f"# solution {inst.known_solution}")
    return "\n".join(lines) + "\n"


def load_instance(path) -> ECInstance:
    with open(path, "r", encoding="ascii") as fh:
        return parse_instance(fh.read())


def pinned_instance_names() -> list:
    """Names of the instance files shipped with the package."""
    pkg = resources.files(__package__) / "data"
    return sorted(p.name[: -len(".txt")] for p in pkg.iterdir() if p.name.endswith(".txt"))


def load_pinned_instance(name: str) -> ECInstance:
    pkg = resources.files(__package__) / "data" / f"{name}.txt"
    return parse_instance(pkg.read_text(encoding="ascii"))


# ---------------------------------------------------------------------------
# assignments and Hamiltonians


def _clause_bit_sums(inst: ECInstance) -> np.ndarray:
    # (2^n, c) bit sums of every clause under every assignment
    z = np.arange(1 << inst.n, dtype=np.int64)[:, None]
    sums = np.zeros((1 << inst.n, len(inst.clauses)), dtype=np.int64)
    for j, (a, b, c) in enumerate(inst.clauses):
        sums[:, j] = ((z[:, 0] >> a) & 1) + ((z[:, 0] >> b) & 1) + ((z[:, 0] >> c) & 1)
    return sums


def penalty_vector(inst: ECInstance) -> np.ndarray:
    """Diagonal clause penalties: sum over clauses of (bit sum - 1)^2.

    Assignment z is indexed with bit i of z = value of position i.
    """
    if not inst.clauses:
        raise ValueError("instance has no clauses")
    return ((_clause_bit_sums(inst) - 1) ** 2).sum(axis=1).astype(float)


def solutions(inst: ECInstance) -> np.ndarray:
    """All satisfying assignments, as integers (exhaustive check)."""
    return np.nonzero(((_clause_bit_sums(inst) - 1) ** 2).sum(axis=1) == 0)[0]


class ECHamiltonians:
    """Matrix-free action of the driver, the penalty, and their interpolation."""

    def __init__(self, inst: ECInstance):
        self.n = inst.n
        self.hp_diag = penalty_vector(inst)

    def apply_h0(self, psi: np.ndarray) -> np.ndarray:
        """(n/2) psi - (1/2) sum_i flip_i(psi); uniform state is its 0 eigenvector."""
        out = (self.n / 2.0) * psi
        for q in range(self.n):
            v = psi.reshape(-1, 2, 1 << q)
            out -= 0.5 * v[:, ::-1, :].reshape(psi.shape)
        return out

    def apply_hp(self, psi: np.ndarray) -> np.ndarray:
        return self.hp_diag * psi

    def apply(self, s: float, psi: np.ndarray) -> np.ndarray:
        return (1.0 - s) * self.apply_h0(psi) + s * self.apply_hp(psi)


def ec_hamiltonians(inst: ECInstance) -> ECHamiltonians:
    return ECHamiltonians(inst)


def ec_ground_state(inst: ECInstance, s: float) -> StateVector:
    """Normalized ground state of the interpolated Hamiltonian at s in [0, 1].

    Matrix-free Lanczos with full reorthogonalization; the residual is
    verified to RESIDUAL_TOL after the solve. The start vector is the
    uniform state plus a fixed tilt (so it is never an exact eigenvector),
    and the result is sign-fixed so repeated calls are bit-identical.
    """
    if not (0.0 <= s <= 1.0):
        raise ValueError(f"s={s!r} outside [0, 1]")
    if inst.n > GROUND_STATE_MAX_QUBITS:
        raise ValueError(f"n={inst.n} beyond ground-state cap {GROUND_STATE_MAX_QUBITS}")
    ham = ECHamiltonians(inst)
    dim = 1 << inst.n
    v0 = np.full(dim, 1.0)
    v0 += 1e-3 * np.cos(np.arange(dim))
    energy, psi = lanczos_smallest(lambda v: ham.apply(s, v), dim, v0, tol=1e-11,
                                   max_iter=min(dim, 600))
    residual = float(np.linalg.norm(ham.apply(s, psi) - energy * psi))
    if residual > RESIDUAL_TOL:
        raise RuntimeError(f"ground state residual {residual:.3e} above {RESIDUAL_TOL:.1e} at s={s}")
    psi = psi / np.linalg.norm(psi)
    lead = int(np.argmax(np.abs(psi)))
    if psi[lead] < 0:
        psi = -psi
    return StateVector(inst.n, psi.astype(complex))


# ---------------------------------------------------------------------------
# the trajectory


def _random_half_split(n: int, stream: Stream) -> tuple:
    order = np.arange(n)
    stream.gen.shuffle(order)
    return tuple(int(q) for q in order[: n // 2])


def adiabatic_trajectory(inst: ECInstance, s_step: float = 0.1, partitions: int = 3,
                         seed: int = 0, renyi_degrees=(2, 3)) -> Trajectory:
    """Ground-state trajectory over the interpolation grid.

    For each s on the grid and each seeded random half-split of the qubits,
    one point; the split seeds are recorded so any figure can be rebuilt.
    """
    if inst.n % 2 != 0:
        raise ValueError("half-splits need an even qubit count")
    steps = round(1.0 / s_step)
    if abs(steps * s_step - 1.0) > 1e-12:
        raise ValueError(f"s_step={s_step!r} must divide 1 evenly")
    root = root_stream(seed)
    splits = [_random_half_split(inst.n, root.split(p)) for p in range(partitions)]
    traj = Trajectory(
        scenario="adiabatic_ec",
        config={"n": inst.n, "clauses": [list(c) for c in inst.clauses],
                "s_step": s_step, "partitions": partitions,
                "splits": [list(sp) for sp in splits]},
        seeds={"root": root.describe()},
    )
    for k in range(steps + 1):
        s = k / steps
        state = ec_ground_state(inst, s)
        for p, split in enumerate(splits):
            part = bipartition(inst.n, split)
            traj.add_point(trajectory_point(
                state, part, f"s={s:.2f}|split{p}", renyi_degrees, traj.next_sequence()))
    traj.record_flexible_findings()
    return traj


def peak_entropy_s(traj: Trajectory) -> float:
    """Interpolation coordinate of the entropy peak, averaged over splits."""
    best_s, best_e = 0.0, -1.0
    by_s: dict = {}
    for p in traj.points:
        s = float(p.label.split("|")[0].split("=")[1])
        by_s.setdefault(s, []).append(p.entropy)
    for s, es in by_s.items():
        mean = sum(es) / len(es)
        if mean > best_e:
            best_s, best_e = s, mean
    return best_s


# ---------------------------------------------------------------------------
# instance pinning


def generate_instance(n: int, c: int, stream: Stream, unique: bool = True,
                      max_tries: int = 20000) -> ECInstance:
    """Rejection-sample a satisfiable instance with c clauses (unique solution
    by default). Used once to pin the shipped corpus; kept so the corpus is
    reproducible from the recorded seeds."""
    for _ in range(max_tries):
        clauses = []
        seen = set()
        while len(clauses) < c:
            trio = tuple(sorted(int(q) for q in stream.gen.choice(n, size=3, replace=False)))
            if trio in seen:
                continue
            seen.add(trio)
            clauses.append(trio)
        inst = ECInstance(n, tuple(clauses))
        sols = solutions(inst)
        if (unique and sols.size == 1) or (not unique and sols.size >= 1):
            bits = format(int(sols[0]), f"0{n}b")[::-1]  # bit i of z = position i
            return ECInstance(n, tuple(clauses), bits)
    raise RuntimeError(f"no {'unique-solution' if unique else 'satisfiable'} instance "
                       f"found in {max_tries} tries at n={n}, c={c}")
