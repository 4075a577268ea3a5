#!/usr/bin/env python3
"""Regenerate every published-figure dataset into out/figures/.

Each dataset is produced by exactly one CLI command with the checked-in
configuration; pass --plot-script to also drop gnuplot scripts next to the
CSVs.
"""

import argparse
import pathlib
import sys

from parabose.cli import main as cli_main

JOBS = [
    ("svs_prob", "svs-prob", "configs/fig_svs_prob.conf"),
    ("cs_prob", "cs-prob", "configs/fig_cs_prob.conf"),
    ("density", "density", "configs/fig_density.conf"),
    ("weight", "weight", "configs/fig_weight.conf"),
    ("oscillator", "oscillator", "configs/fig_oscillator.conf"),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/figures")
    parser.add_argument("--plot-script", action="store_true")
    args = parser.parse_args()
    root = pathlib.Path(__file__).resolve().parent.parent
    for name, command, config in JOBS:
        argv = [command, "--config", str(root / config),
                "--out", str(pathlib.Path(args.out) / name)]
        if args.plot_script:
            argv.append("--plot-script")
        code = cli_main(argv)
        if code != 0:
            print(f"{command} failed with exit code {code}", file=sys.stderr)
            return code
        print(f"wrote {args.out}/{name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
