"""Trajectory container shared by all scenario generators.

Point order is bookkeeping only; the connecting lines drawn by the figure
scripts carry no physical meaning. Tight-boundary containment is checked
per point on construction and can be re-audited wholesale; flexible-curve
exceedances are collected as findings, never hard failures, because the
flexible curve is a typicality statement rather than a bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .. import boundaries
from ..spectral import TrajectoryPoint

__all__ = ["Trajectory", "FLEXIBLE_SLACK"]

FLEXIBLE_SLACK = 0.02  # nats


@dataclass
class Trajectory:
    scenario: str
    config: dict
    points: list = field(default_factory=list)
    seeds: dict = field(default_factory=dict)
    findings: list = field(default_factory=list)
    results: dict = field(default_factory=dict)

    def add_point(self, point: TrajectoryPoint) -> TrajectoryPoint:
        if self.points and point.sequence <= self.points[-1].sequence:
            raise ValueError("sequence ordinals must be strictly increasing")
        self.points.append(point)
        return point

    def next_sequence(self) -> int:
        return self.points[-1].sequence + 1 if self.points else 0

    def tight_violations(self, tol: float = 1e-9) -> list:
        """Points outside the exact feasible region; empty means containment holds."""
        out = []
        for p in self.points:
            lo = boundaries.f1(min(p.lambda0, 1.0))
            hi = boundaries.exact_upper(min(max(p.lambda0, 1.0 / p.alpha), 1.0), p.alpha)
            if not (lo - tol <= p.entropy <= hi + tol):
                out.append((p.label, p.lambda0, p.entropy, lo, hi))
        return out

    def flexible_exceedances(self, slack: float = FLEXIBLE_SLACK) -> list:
        """Points above the conditional-mean curve by more than `slack` nats."""
        out = []
        for p in self.points:
            ceiling = boundaries.flexible_E(min(p.lambda0, 1.0), p.alpha, p.beta)
            if p.entropy > ceiling + slack:
                out.append((p.label, p.lambda0, p.entropy, ceiling))
        return out

    def record_flexible_findings(self, slack: float = FLEXIBLE_SLACK) -> "Trajectory":
        for label, lam, ent, ceiling in self.flexible_exceedances(slack):
            self.findings.append(
                f"{label}: entropy {ent:.6f} exceeds flexible curve {ceiling:.6f} "
                f"at lambda0={lam:.6f} by more than {slack} nats"
            )
        return self
