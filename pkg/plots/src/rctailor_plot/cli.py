"""Command-line entry point: render one figure from one harness CSV."""

from __future__ import annotations

import argparse
import sys

from .figures import KINDS, FigureSpec, SchemaError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="rctailor-plot",
        description="Render an rctailor sweep CSV as a figure (SVG by default).",
    )
    parser.add_argument("--kind", required=True, choices=KINDS,
                        help="which figure the CSV holds")
    parser.add_argument("--in", dest="src", required=True, metavar="PATH",
                        help="input CSV from the rctailor CLI")
    parser.add_argument("--out", required=True, metavar="PATH",
                        help="output image path")
    parser.add_argument("--format", choices=("svg", "png"), default=None,
                        help="output format (default: from --out suffix, else svg)")
    args = parser.parse_args(argv)
    spec = FigureSpec.for_kind(args.kind, args.src, args.out)
    try:
        render(spec, fmt=args.format)
    except (SchemaError, OSError) as exc:
        print(f"rctailor-plot: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
