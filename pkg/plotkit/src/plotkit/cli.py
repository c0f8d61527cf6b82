"""plotkit command line: trace CSV in, figure file out."""

from __future__ import annotations

import argparse
import sys

from .aggregate import METRICS, PlotSpec
from .render import render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotkit",
        description="Plot metric-vs-round curves from simulation trace CSVs",
    )
    parser.add_argument("--in", dest="input", required=True, help="trace CSV path")
    parser.add_argument("--metric", choices=METRICS, default="lcc",
                        help="column to plot (default: lcc)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--band", action="store_true",
                        help="shade +-1 standard deviation across runs")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(
        input_csv=args.input,
        y_metric=args.metric,
        output_image=args.out,
        band=args.band,
    )
    try:
        groups = render(spec)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out} ({len(groups)} group(s))")
    return 0


if __name__ == "__main__":
    sys.exit(main())
