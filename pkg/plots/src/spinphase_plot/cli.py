"""Command line front end.

Either a JSON spec file:

    spinphase-plot --spec figure.json

with keys `csvs` (list of paths), `layout` ("RxC"), `out`, and optional
`title`; or positional CSV paths:

    spinphase-plot fig2a.csv fig2b.csv --layout 1x2 --out fig2.png
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import EmptyInput, PlotError, SchemaMismatch
from .figure import FigureSpec, render


def _parse_layout(text: str) -> tuple[int, int]:
    try:
        rows, cols = text.lower().split("x")
        return int(rows), int(cols)
    except ValueError as exc:
        raise ValueError(f"layout must look like '2x2', got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="spinphase-plot",
        description="Render spinphase CSV output as figure panels.",
    )
    p.add_argument("csvs", nargs="*", help="input CSV paths, one panel each")
    p.add_argument("--spec", default=None, help="JSON figure spec file")
    p.add_argument("--layout", type=_parse_layout, default=None,
                   help="panel grid as RxC (default: one row)")
    p.add_argument("--out", default=None, help="output image path")
    p.add_argument("--title", default=None)
    p.add_argument("--dpi", type=int, default=150)
    return p


def spec_from_args(args) -> FigureSpec:
    if args.spec is not None:
        if args.csvs:
            raise ValueError("give either --spec or positional CSVs, not both")
        with open(args.spec, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        return FigureSpec(
            csv_paths=tuple(raw["csvs"]),
            layout=_parse_layout(raw["layout"]),
            out=raw["out"],
            title=raw.get("title"),
            dpi=int(raw.get("dpi", args.dpi)),
        )
    if not args.csvs:
        raise EmptyInput("no CSV paths given")
    if args.out is None:
        raise ValueError("--out is required with positional CSVs")
    layout = args.layout or (1, len(args.csvs))
    return FigureSpec(
        csv_paths=tuple(args.csvs),
        layout=layout,
        out=args.out,
        title=args.title,
        dpi=args.dpi,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = spec_from_args(args)
        render(spec)
    except (SchemaMismatch, EmptyInput, PlotError, ValueError, OSError,
            KeyError, json.JSONDecodeError) as exc:
        print(f"spinphase-plot: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
