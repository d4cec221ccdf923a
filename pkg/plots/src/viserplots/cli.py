"""Command line wrapper: viser-render <csv> <out> --kind block|random."""

from __future__ import annotations

import argparse
import sys

from .render import SchemaError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="viser-render",
        description="Render a benchmark CSV into a three-panel figure.")
    parser.add_argument("csv", help="benchmark CSV file")
    parser.add_argument("out", help="output image path (extension picks format)")
    parser.add_argument("--kind", choices=["block", "random"], required=True)
    args = parser.parse_args(argv)
    try:
        render(args.csv, args.out, args.kind)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
