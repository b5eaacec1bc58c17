"""Command front end: render one figure description to a PNG or PDF.

Exit codes follow the simulation CLI convention: 2 for a usage problem
(bad arguments, unknown figure kind, unsupported output format), 1 for a
data problem (missing file, schema mismatch, empty table). On any failure
no output file is written.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import figures, tables

__all__ = ["main"]


def _parser():
    p = argparse.ArgumentParser(
        prog="render",
        description="Render a figure description (JSON) to PNG or PDF.")
    p.add_argument("--spec", required=True, help="figure description file")
    p.add_argument("--out", required=True, help="output image (.png or .pdf)")
    p.add_argument("--no-connect", action="store_true",
                   help="suppress the lines joining successive checkpoints")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    out = Path(args.out)
    if out.suffix.lower() not in (".png", ".pdf"):
        print(f"render: unsupported output format {out.suffix!r} "
              "(use .png or .pdf)", file=sys.stderr)
        return 2

    try:
        with open(args.spec, "r", encoding="ascii") as fh:
            spec = json.load(fh)
    except (OSError, ValueError) as exc:
        print(f"render: {exc}", file=sys.stderr)
        return 1
    if spec.get("kind") not in figures.KINDS:
        print(f"render: unknown figure kind {spec.get('kind')!r} "
              f"(expected one of {', '.join(sorted(figures.KINDS))})",
              file=sys.stderr)
        return 2
    if args.no_connect:
        spec = dict(spec, connect=False)

    # This package only draws numbers it was handed. Guard against someone
    # wiring a figure builder to the simulation library: building the figure
    # must not drag any of its modules into the process.
    sim_before = {m for m in sys.modules if m.split(".")[0] == "entrack"}
    try:
        fig = figures.build(spec, Path(args.spec).resolve().parent)
    except (OSError, ValueError, KeyError) as exc:
        print(f"render: {exc}", file=sys.stderr)
        return 1
    sim_after = {m for m in sys.modules if m.split(".")[0] == "entrack"}
    assert sim_after == sim_before, "rendering imported simulation code"

    save_kw = {"dpi": spec.get("dpi", 100)}
    if out.suffix.lower() == ".pdf":
        save_kw["metadata"] = {"CreationDate": None}  # reproducible bytes
    fig.savefig(out, **save_kw)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
