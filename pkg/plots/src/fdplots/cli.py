"""Command-line figure rendering: results CSVs in, PNG/SVG figures out."""

from __future__ import annotations

import argparse

from .render import render_standard


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fdmimo-plots",
        description="Render fdmimo experiment results into figures")
    sub = parser.add_subparsers(dest="command", required=True)
    rend = sub.add_parser("render", help="render figure2/3/4 from a results dir")
    rend.add_argument("--in", dest="results_dir", required=True,
                      help="directory holding figure2.csv, figure3.csv, figure4.csv")
    rend.add_argument("--out", dest="figures_dir", required=True,
                      help="directory to write the PNG/SVG figures into")
    args = parser.parse_args(argv)

    written = render_standard(args.results_dir, args.figures_dir)
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
