"""Figure builders.

Every builder consumes a figure description (a plain dict loaded from the
spec JSON) plus the directory it was loaded from, reads the referenced data
files through tables.py, and returns a matplotlib Figure. Nothing in here
recomputes physics: boundary curves are drawn only when the description
points at a file that already contains their samples.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # headless + deterministic raster output

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from . import tables  # noqa: E402

__all__ = ["build", "KINDS", "STYLE", "CONNECT_CAPTION"]

# Shared look for boundary curves: gray family, tight laws solid, the
# average-entropy (flexible) references slightly heavier so they read as the
# statistical baseline, algorithm staircase references dotted.
STYLE = {
    "f1": dict(linestyle="-.", color="0.45", linewidth=1.0),
    "f2": dict(linestyle="--", color="0.45", linewidth=1.0),
    "f3": dict(linestyle="-", color="0.65", linewidth=1.0),
    "exact_upper": dict(linestyle="-", color="0.35", linewidth=1.0),
    "flexible_E": dict(linestyle="-", color="0.2", linewidth=1.6),
    "f_shor": dict(linestyle=":", color="0.3", linewidth=1.2),
    "g1": dict(linestyle="-.", color="0.45", linewidth=1.0),
    "g3": dict(linestyle="-", color="0.35", linewidth=1.0),
    "flexible_gap": dict(linestyle="-", color="0.2", linewidth=1.6),
    "g_shor": dict(linestyle=":", color="0.3", linewidth=1.2),
}

TRAJ_CURVES = ("f1", "f2", "f3", "exact_upper", "flexible_E", "f_shor")
GAP_CURVES = ("g1", "g3", "flexible_gap", "g_shor")

CONNECT_CAPTION = ("thin lines join successive checkpoints for readability; "
                   "they are not data")

_MARKERS = ("o", "s", "^", "D", "v", "P")
_COLORS = ("C0", "C1", "C2", "C3", "C4", "C5")


def _load_curves(spec: dict, base: Path) -> dict:
    block = spec.get("curves")
    if not block:
        return {}
    curves: dict = {}
    if "from_json" in block:
        curves.update(tables.read_curves_from_json(tables.resolve(base, block["from_json"])))
    for token in block.get("files", ()):
        curves.update(tables.read_boundary_csv(tables.resolve(base, token)))
    names = block.get("names")
    if names is not None:
        curves = {n: curves[n] for n in names if n in curves}
    return curves


def _draw_curves(ax, curves: dict, allowed, style_over: dict):
    for name in allowed:
        if name not in curves:
            continue
        xs, vs = curves[name]
        style = dict(STYLE.get(name, dict(linestyle="-", color="0.5", linewidth=1.0)))
        style.update(style_over.get(name, {}))
        finite = np.isfinite(vs)
        ax.plot(xs[finite], vs[finite], label=name, zorder=1, **style)


def _inputs(spec: dict, base: Path):
    """Yield (description dict, filtered TrajectoryTable, marker, color, label)."""
    for k, item in enumerate(spec["inputs"]):
        table = tables.read_trajectory(tables.resolve(base, item["path"]))
        if "filter_prefix" in item:
            table = table.keep(np.array([s.startswith(item["filter_prefix"])
                                         for s in table.label]))
        if "filter_contains" in item:
            table = table.keep(np.array([item["filter_contains"] in s
                                         for s in table.label]))
        marker = item.get("marker", _MARKERS[k % len(_MARKERS)])
        color = item.get("color", _COLORS[k % len(_COLORS)])
        label = item.get("label",
                         item.get("filter_prefix",
                                  item.get("filter_contains", Path(item["path"]).stem)))
        yield item, table, marker, color, label


def _connect(fig, ax, drew_any: bool):
    if drew_any:
        fig.text(0.5, 0.005, CONNECT_CAPTION, ha="center", va="bottom",
                 fontsize=7, color="0.35")


def _scatter_kind(spec: dict, base: Path, yval, default_curves, ylabel: str):
    fig, ax = plt.subplots()
    _draw_curves(ax, _load_curves(spec, base), default_curves, spec.get("style", {}))
    connect = bool(spec.get("connect", False))
    drew_lines = False
    for _, table, marker, color, label in _inputs(spec, base):
        ys = yval(table)
        if connect and len(ys) > 1:
            ax.plot(table.lambda0, ys, color=color, linewidth=0.6,
                    alpha=0.8, zorder=2)
            drew_lines = True
        ax.scatter(table.lambda0, ys, marker=marker, s=18,
                   facecolors="none", edgecolors=color, linewidths=1.0,
                   label=label, zorder=3)
    _connect(fig, ax, drew_lines)
    ax.set_xlabel("dominant eigenvalue")
    ax.set_ylabel(ylabel)
    if spec.get("xlim"):
        ax.set_xlim(*spec["xlim"])
    if spec.get("ylim"):
        ax.set_ylim(*spec["ylim"])
    ax.set_title(spec.get("title", ""))
    ax.legend(loc=spec.get("legend", "upper right"), fontsize=8)
    return fig


def trajectory2d(spec: dict, base: Path):
    return _scatter_kind(spec, base, lambda t: t.entropy, TRAJ_CURVES,
                         "entanglement entropy (nats)")


def gap2d(spec: dict, base: Path):
    # A fully degenerate second eigenvalue is recorded as inf; it is drawn at
    # the 2 ln(alpha) ceiling of its own row so the point stays on the page.
    def yval(table):
        ys = table.gap.copy()
        sentinel = ~np.isfinite(ys)
        ys[sentinel] = 2.0 * np.log(table.alpha[sentinel].astype(float))
        return ys

    return _scatter_kind(spec, base, yval, GAP_CURVES, "spectrum gap (nats)")


def mpd_hist(spec: dict, base: Path):
    data = tables.read_mpd(tables.resolve(base, spec["input"]))
    fig, ax = plt.subplots()
    ax.bar(data["bin_left"], data["empirical"],
           width=data["bin_right"] - data["bin_left"], align="edge",
           color="0.8", edgecolor="0.45", linewidth=0.5, label="empirical")
    centers = 0.5 * (data["bin_left"] + data["bin_right"])
    ax.plot(centers, data["analytic"], color="k", linewidth=1.3, label="analytic")
    ax.set_xlabel("scaled eigenvalue")
    ax.set_ylabel("density")
    ax.set_title(spec.get("title", ""))
    ax.legend(loc=spec.get("legend", "upper right"), fontsize=8)
    return fig


def renyi3d(spec: dict, base: Path):
    fig = plt.figure()
    ax = fig.add_subplot(projection="3d")
    for _, table, marker, color, label in _inputs(spec, base):
        degrees = [1.0] + sorted(table.renyi)
        first = True
        for i in range(len(table.lambda0)):
            es = [table.entropy[i]] + [table.renyi[d][i] for d in sorted(table.renyi)]
            ax.plot([table.lambda0[i]] * len(degrees), degrees, es,
                    color=color, linewidth=0.7, alpha=0.7,
                    label=label if first else None)
            ax.scatter([table.lambda0[i]] * len(degrees), degrees, es,
                       marker=marker, s=8, color=color, depthshade=False)
            first = False
    ax.set_xlabel("dominant eigenvalue")
    ax.set_ylabel("degree")
    ax.set_zlabel("entropy (nats)")
    ax.view_init(elev=22, azim=-60)
    ax.set_title(spec.get("title", ""))
    ax.legend(loc=spec.get("legend", "upper right"), fontsize=8)
    return fig


def sweep(spec: dict, base: Path):
    data = tables.read_dominant(tables.resolve(base, spec["input"]))
    fig, ax = plt.subplots()
    ax.errorbar(data["gamma"], data["mean_lambda0"], yerr=data["stderr"],
                fmt="o", ms=3.5, capsize=2, color="C0", linewidth=1.0,
                label="measured")
    ax.plot(data["gamma"], data["predicted"], color="0.3", linewidth=1.2,
            label="predicted")
    # predicted value at zero perturbation is the unperturbed bulk edge
    ax.axhline(data["predicted"][0], linestyle=":", color="0.5",
               linewidth=1.0, label="bulk edge")
    ax.set_xlabel("perturbation strength")
    ax.set_ylabel("mean dominant eigenvalue")
    ax.set_yscale(spec.get("yscale", "log"))
    ax.set_title(spec.get("title", ""))
    ax.legend(loc=spec.get("legend", "upper left"), fontsize=8)
    return fig


KINDS = {
    "trajectory2d": trajectory2d,
    "gap2d": gap2d,
    "mpd_hist": mpd_hist,
    "renyi3d": renyi3d,
    "sweep": sweep,
}


def build(spec: dict, base: Path):
    kind = spec.get("kind")
    if kind not in KINDS:
        raise KeyError(kind)
    return KINDS[kind](spec, base)
