#!/usr/bin/env python3
"""Run the three bundled experiments end to end.

Produces figure2.csv / figure3.csv (TX power and residual SI vs. target
rate), figure4.csv (outage vs. power cap at 8 bps/Hz), table1.csv (per-mode
solve timings), and summary.json in the output directory.  Pass --quick for
a 25-trial smoke run.
"""

import argparse
import sys
from pathlib import Path

from fdmimo.cli import main as fdmimo_main

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results", help="output directory")
    parser.add_argument("--config", default=str(ROOT / "configs" / "paper.cfg"))
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--quick", action="store_true",
                        help="25 trials instead of the configured count")
    args = parser.parse_args()

    common = [args.config, "--out", args.out, "--threads", str(args.threads)]
    if args.quick:
        common += ["--trials", "25"]
    for sub in ("sweep-rates", "sweep-pmax", "bench"):
        print(f"== {sub} ==")
        rc = fdmimo_main([sub, *common])
        if rc != 0:
            return rc
    return 0


if __name__ == "__main__":
    sys.exit(main())
