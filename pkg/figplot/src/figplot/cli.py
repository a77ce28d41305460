"""Command line: figplot render --figure figN --csv path --out path."""

from __future__ import annotations

import argparse
import sys

from figplot.render import SCHEMAS, SchemaError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="figplot", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)
    p = subs.add_parser("render", help="render one figure CSV to an image")
    p.add_argument("--figure", required=True, choices=sorted(SCHEMAS))
    p.add_argument("--csv", required=True, help="input CSV path")
    p.add_argument("--out", required=True, help="output image path (png/pdf/svg)")
    args = parser.parse_args(argv)
    try:
        out = render(args.figure, args.csv, args.out)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
