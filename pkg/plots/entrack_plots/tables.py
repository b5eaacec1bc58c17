"""Readers for the CSV/JSON files the trajectory CLI writes.

Each reader validates the header against the documented schema before
touching any values; a mismatch raises SchemaError naming the file, what was
expected, and what was found, so a stale or hand-edited file fails loudly
rather than plotting garbage.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "SchemaError",
    "EmptyInputError",
    "TrajectoryTable",
    "read_trajectory",
    "read_boundary_csv",
    "read_curves_from_json",
    "read_mpd",
    "read_dominant",
    "TRAJECTORY_COLUMNS",
    "MPD_COLUMNS",
    "DOMINANT_COLUMNS",
]

TRAJECTORY_COLUMNS = ["scenario", "label", "sequence", "alpha", "beta",
                      "lambda0", "entropy_vn", "gap"]
BOUNDARY_COLUMNS = ["curve", "x", "value"]
MPD_COLUMNS = ["bin_left", "bin_right", "count", "empirical", "analytic"]
DOMINANT_COLUMNS = ["gamma", "mean_lambda0", "predicted", "stderr", "rel_err"]


class SchemaError(ValueError):
    def __init__(self, path, expected, found):
        self.path = str(path)
        self.expected = list(expected)
        self.found = list(found) if found else []
        super().__init__(
            f"{path}: expected columns {', '.join(self.expected)}; "
            f"found {', '.join(self.found) if self.found else 'nothing'}")


class EmptyInputError(ValueError):
    def __init__(self, path):
        super().__init__(f"{path}: no data rows")


def _read_rows(path, expected, exact=True):
    with open(path, "r", encoding="ascii", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(path, expected, []) from None
        ok = header == expected if exact else header[: len(expected)] == expected
        if not ok:
            raise SchemaError(path, expected, header)
        rows = [row for row in reader if row]
    if not rows:
        raise EmptyInputError(path)
    return header, rows


@dataclass
class TrajectoryTable:
    path: str
    scenario: np.ndarray  # str
    label: np.ndarray  # str
    sequence: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    lambda0: np.ndarray
    entropy: np.ndarray
    gap: np.ndarray
    renyi: dict  # degree (float) -> array

    def keep(self, mask) -> "TrajectoryTable":
        return TrajectoryTable(
            self.path, self.scenario[mask], self.label[mask],
            self.sequence[mask], self.alpha[mask], self.beta[mask],
            self.lambda0[mask], self.entropy[mask], self.gap[mask],
            {d: v[mask] for d, v in self.renyi.items()})


def read_trajectory(path) -> TrajectoryTable:
    expected = TRAJECTORY_COLUMNS + ["renyi_*"]
    with open(path, "r", encoding="ascii", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(path, expected, []) from None
        if (header[: len(TRAJECTORY_COLUMNS)] != TRAJECTORY_COLUMNS
                or not all(c.startswith("renyi_") for c in header[len(TRAJECTORY_COLUMNS):])):
            raise SchemaError(path, expected, header)
        rows = [row for row in reader if row]
    if not rows:
        raise EmptyInputError(path)
    cols = list(zip(*rows))
    degrees = [float(c.split("_", 1)[1]) for c in header[len(TRAJECTORY_COLUMNS):]]
    return TrajectoryTable(
        path=str(path),
        scenario=np.array(cols[0]),
        label=np.array(cols[1]),
        sequence=np.array([int(v) for v in cols[2]]),
        alpha=np.array([int(v) for v in cols[3]]),
        beta=np.array([int(v) for v in cols[4]]),
        lambda0=np.array([float(v) for v in cols[5]]),
        entropy=np.array([float(v) for v in cols[6]]),
        gap=np.array([float(v) for v in cols[7]]),  # "inf" parses to math.inf
        renyi={d: np.array([float(v) for v in cols[8 + k]])
               for k, d in enumerate(degrees)},
    )


def read_boundary_csv(path) -> dict:
    """curve name -> (x array, value array); the file may hold several curves."""
    header, rows = _read_rows(path, BOUNDARY_COLUMNS, exact=False)
    if header not in (BOUNDARY_COLUMNS, BOUNDARY_COLUMNS + ["extrapolated"]):
        raise SchemaError(path, BOUNDARY_COLUMNS + ["[extrapolated]"], header)
    out: dict = {}
    for row in rows:
        out.setdefault(row[0], []).append((float(row[1]), float(row[2])))
    return {name: (np.array([p[0] for p in pts]), np.array([p[1] for p in pts]))
            for name, pts in out.items()}


def read_curves_from_json(path) -> dict:
    """The boundary block a trajectory JSON mirror embeds, same shape as above."""
    with open(path, "r", encoding="ascii") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "boundaries" not in doc:
        raise SchemaError(path, ["boundaries"], sorted(doc) if isinstance(doc, dict) else [])
    out = {}
    for name, block in doc["boundaries"].items():
        samples = block.get("samples", [])
        if samples:
            out[name] = (np.array([s[0] for s in samples]),
                         np.array([s[1] for s in samples]))
    return out


def _float_table(path, expected):
    _, rows = _read_rows(path, expected)
    cols = list(zip(*rows))
    return {name: np.array([float(v) for v in cols[i]])
            for i, name in enumerate(expected)}


def read_mpd(path) -> dict:
    return _float_table(path, MPD_COLUMNS)


def read_dominant(path) -> dict:
    return _float_table(path, DOMINANT_COLUMNS)


def resolve(base: Path, token: str) -> Path:
    """Paths inside a figure description are relative to the file it came from."""
    p = Path(token)
    return p if p.is_absolute() else (base / p)
