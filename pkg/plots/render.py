#!/usr/bin/env python3
"""Render one figure from the data files the simulation CLI writes.

    python3 plots/render.py --spec figure.json --out figure.png

The spec file is a JSON object:

    {
      "kind":   "trajectory2d" | "gap2d" | "mpd_hist" | "renyi3d" | "sweep",
      "title":  "...",                      optional
      "dpi":    100,                        optional
      "connect": true,                      trajectory2d/gap2d: join checkpoints
      "inputs": [                           trajectory2d/gap2d/renyi3d
        {"path": "run.csv",                 relative to the spec file
         "label": "...",                    optional legend entry
         "marker": "o", "color": "C0",      optional
         "filter_prefix": "P",              optional label filters
         "filter_contains": "split0"}
      ],
      "input":  "table.csv",                mpd_hist/sweep single table
      "curves": {                           boundary overlays, all optional
        "from_json": "run.json",            embedded boundary samples
        "files": ["g1.csv", ...],           boundary CSV exports
        "names": ["f1", "flexible_E"]       restrict which curves to draw
      },
      "style":  {"f1": {"color": "0.3"}},   per-curve overrides
      "legend": "upper right", "xlim": [..], "ylim": [..], "yscale": "log"
    }

Curves are drawn only from sample files; this script never computes them.
--no-connect suppresses the checkpoint-joining lines regardless of the spec.
"""

import sys
from pathlib import Path

if __package__ in (None, ""):  # running as a script, not an installed module
    sys.path.insert(0, str(Path(__file__).resolve().parent))

from entrack_plots.cli import main

if __name__ == "__main__":
    sys.exit(main())
