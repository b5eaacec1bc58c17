"""Serialization: trajectory CSV/JSON, RMT experiment tables, manifests.

The CSV schema is the contract with the figure scripts: fixed header
scenario,label,sequence,alpha,beta,lambda0,entropy_vn,gap,renyi_2,... with
floats at 17 significant digits (lossless binary64 round trip) and the
infinite-gap sentinel spelled "inf". JSON files mirror the rows and attach
sampled boundary curves so one file can drive one figure. Manifests record
the command, seeds, version, and output digests; timestamps are the only
field allowed to differ between identical runs.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from datetime import datetime, timezone

import numpy as np

from . import __version__, boundaries
from .scenarios.trajectory import Trajectory

__all__ = [
    "fmt_float", "trajectory_header", "trajectory_rows",
    "write_trajectory_csv", "trajectory_json_payload", "write_trajectory_json",
    "write_boundary_csv", "write_mpd_csv", "write_dominant_csv",
    "write_page_csv", "write_conditional_csv", "write_manifest",
    "read_trajectory_csv", "validate_trajectory_rows",
]

_BASE_COLUMNS = ["scenario", "label", "sequence", "alpha", "beta",
                 "lambda0", "entropy_vn", "gap"]


def fmt_float(x: float) -> str:
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        raise ValueError("refusing to serialize NaN")
    return f"{x:.17g}"


def _renyi_degrees(traj: Trajectory):
    if not traj.points:
        return []
    degrees = sorted(traj.points[0].renyi)
    for p in traj.points:
        if sorted(p.renyi) != degrees:
            raise ValueError(f"point {p.label!r} has Renyi degrees {sorted(p.renyi)}, "
                             f"expected {degrees}")
    return degrees


def trajectory_header(renyi_degrees) -> list:
    return _BASE_COLUMNS + [f"renyi_{d:g}" for d in renyi_degrees]


def trajectory_rows(traj: Trajectory):
    """Rows as string lists, ready for the csv writer."""
    degrees = _renyi_degrees(traj)
    rows = []
    for p in traj.points:
        row = [traj.scenario, p.label, str(p.sequence), str(p.alpha), str(p.beta),
               fmt_float(p.lambda0), fmt_float(p.entropy), fmt_float(p.gap)]
        row += [fmt_float(p.renyi[d]) for d in degrees]
        rows.append(row)
    return trajectory_header(degrees), rows


def write_trajectory_csv(traj: Trajectory, path) -> None:
    header, rows = trajectory_rows(traj)
    with open(path, "w", encoding="ascii", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


# ---------------------------------------------------------------------------
# JSON mirror with boundary curves attached


def _jsonable(obj):
    """Deterministic JSON-safe copy: numpy scalars to python, inf to 'inf'."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            raise ValueError("refusing to serialize NaN")
        return x
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


_SCENARIO_CURVES = {
    "shor": ("f1", "f2", "f3", "exact_upper", "flexible_E", "f_shor", "g_shor"),
}
_DEFAULT_CURVES = ("f1", "f2", "f3", "exact_upper", "flexible_E")


def attach_boundaries(traj: Trajectory, grid: int = 256) -> dict:
    """Sample every curve relevant to the trajectory's partition size."""
    if not traj.points:
        return {}
    alpha, beta = traj.points[0].alpha, traj.points[0].beta
    names = _SCENARIO_CURVES.get(traj.scenario.split("_")[0], _DEFAULT_CURVES)
    xs = np.linspace(1.0 / alpha, 1.0, grid)
    out = {}
    for name in names:
        curve = boundaries.sample_curve(name, {"alpha": alpha, "beta": beta}, xs)
        out[name] = {"params": curve.params, "samples": curve.samples,
                     "meta": curve.meta}
    return out


def trajectory_json_payload(traj: Trajectory, grid: int = 256) -> dict:
    degrees = _renyi_degrees(traj)
    points = []
    for p in traj.points:
        d = {"label": p.label, "sequence": p.sequence, "alpha": p.alpha,
             "beta": p.beta, "lambda0": p.lambda0, "entropy_vn": p.entropy,
             "gap": p.gap}
        d.update({f"renyi_{k:g}": v for k, v in p.renyi.items()})
        points.append(d)
    return _jsonable({
        "scenario": traj.scenario,
        "config": traj.config,
        "seeds": traj.seeds,
        "results": traj.results,
        "findings": traj.findings,
        "renyi_degrees": degrees,
        "points": points,
        "boundaries": attach_boundaries(traj, grid),
    })


def write_trajectory_json(traj: Trajectory, path, grid: int = 256) -> None:
    payload = trajectory_json_payload(traj, grid)
    with open(path, "w", encoding="ascii") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# boundary and RMT tables


def write_boundary_csv(curve: boundaries.BoundaryCurve, path) -> None:
    extrapolated = curve.meta.get("extrapolated")
    with open(path, "w", encoding="ascii", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if extrapolated is None:
            w.writerow(["curve", "x", "value"])
            for x, v in curve.samples:
                w.writerow([curve.name, fmt_float(x), fmt_float(v)])
        else:
            w.writerow(["curve", "x", "value", "extrapolated"])
            for (x, v), flag in zip(curve.samples, extrapolated):
                w.writerow([curve.name, fmt_float(x), fmt_float(v), int(flag)])


def write_mpd_csv(path, edges, counts, sigma: float, lam: float) -> None:
    """Histogram of sampled squared singular values next to the limit density."""
    total = counts.sum()
    with open(path, "w", encoding="ascii", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["bin_left", "bin_right", "count", "empirical", "analytic"])
        for i in range(len(counts)):
            left, right = edges[i], edges[i + 1]
            width = right - left
            center = 0.5 * (left + right)
            emp = counts[i] / (total * width) if total else 0.0
            ana = float(boundaries.mpd_density(center, sigma, lam))
            w.writerow([fmt_float(left), fmt_float(right), str(int(counts[i])),
                        fmt_float(emp), fmt_float(ana)])


def write_dominant_csv(path, results) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["gamma", "mean_lambda0", "predicted", "stderr", "rel_err"])
        for r in results:
            rel = abs(r.mean_lambda0 - r.prediction) / r.prediction
            w.writerow([fmt_float(r.gamma), fmt_float(r.mean_lambda0),
                        fmt_float(r.prediction), fmt_float(r.stderr),
                        fmt_float(rel)])


def write_page_csv(path, results) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["alpha", "beta", "sample", "entropy", "page_prediction"])
        for r in results:
            for i, e in enumerate(r.entropies):
                w.writerow([str(r.alpha), str(r.beta), str(i), fmt_float(e),
                            fmt_float(r.prediction)])


def write_conditional_csv(path, bins) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["bin_center", "count", "mean_entropy", "mean_gap",
                    "flexible_E", "flexible_gap"])
        for b in bins:
            w.writerow([fmt_float(b["center"]), str(int(b["count"])),
                        fmt_float(b["mean_entropy"]), fmt_float(b["mean_gap"]),
                        fmt_float(b["flexible_E"]), fmt_float(b["flexible_gap"])])


# ---------------------------------------------------------------------------
# manifests


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(path, command, config, seeds, outputs, started, results=None) -> None:
    payload = _jsonable({
        "command": list(command),
        "config": config,
        "seeds": seeds,
        "version": __version__,
        "started": started,
        "finished": datetime.now(timezone.utc).isoformat(),
        "outputs": {str(p.name if hasattr(p, "name") else p): _sha256(p)
                    for p in outputs},
        "results": results or {},
    })
    with open(path, "w", encoding="ascii") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


# ---------------------------------------------------------------------------
# re-validation of serialized rows


def read_trajectory_csv(path):
    """Rows back as dicts with floats restored (gap 'inf' included)."""
    with open(path, "r", encoding="ascii", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or reader.fieldnames[:8] != _BASE_COLUMNS:
            raise ValueError(f"unexpected header {reader.fieldnames}; "
                             f"want {_BASE_COLUMNS} + renyi columns")
        rows = []
        for raw in reader:
            row = {"scenario": raw["scenario"], "label": raw["label"],
                   "sequence": int(raw["sequence"]), "alpha": int(raw["alpha"]),
                   "beta": int(raw["beta"])}
            for key, val in raw.items():
                if key not in row and key not in ("scenario", "label"):
                    row[key] = float(val)
            rows.append(row)
    return rows


def validate_trajectory_rows(rows, tol: float = 1e-9):
    """Re-check tight containment from serialized values alone.

    Returns a list of problem strings, empty when every row lies between the
    lower bound and the exact upper bound and the Renyi family is ordered.
    """
    problems = []
    for i, row in enumerate(rows):
        where = f"row {i} ({row['label']})"
        lam, ent, alpha = row["lambda0"], row["entropy_vn"], row["alpha"]
        if not (1.0 / alpha - tol <= lam <= 1.0 + tol):
            problems.append(f"{where}: lambda0={lam} outside [1/{alpha}, 1]")
            continue
        lam_c = min(lam, 1.0)
        lo = boundaries.f1(lam_c)
        hi = boundaries.exact_upper(max(lam_c, 1.0 / alpha), alpha)
        if not (lo - tol <= ent <= hi + tol):
            problems.append(f"{where}: entropy {ent} outside [{lo}, {hi}]")
        decreasing = ent
        for key in sorted(k for k in row if k.startswith("renyi_")):
            d = float(key.split("_", 1)[1])
            if d > 1 and row[key] > decreasing + 1e-6:
                problems.append(f"{where}: {key}={row[key]} above degree-ordered "
                                f"ceiling {decreasing}")
            if d > 1:
                decreasing = row[key]
    return problems
