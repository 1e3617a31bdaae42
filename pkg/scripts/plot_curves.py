#!/usr/bin/env python3
"""Plot alive-node and cumulative-packet curves from a compare directory.

Reads mean_curves.csv as written by `wsnsim compare` and saves two PNGs next
to it.  Needs matplotlib, which is deliberately not a package dependency.
"""

import argparse
import csv
from collections import defaultdict
from pathlib import Path

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None


def load_curves(path):
    curves = defaultdict(lambda: ([], []))
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            alive, packets = curves[row["protocol"]]
            alive.append(float(row["alive_mean"]))
            packets.append(float(row["packets_cum_mean"]))
    return curves


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("compare_dir", type=Path,
                        help="directory containing mean_curves.csv")
    args = parser.parse_args()
    if plt is None:
        raise SystemExit("matplotlib is required: pip install matplotlib")

    curves = load_curves(args.compare_dir / "mean_curves.csv")
    for column, ylabel, stem in [
        (0, "alive nodes (mean)", "alive"),
        (1, "packets to BS, cumulative (mean)", "packets"),
    ]:
        fig, ax = plt.subplots(figsize=(7, 4.5))
        for protocol, series in sorted(curves.items()):
            ax.plot(range(1, len(series[column]) + 1), series[column], label=protocol)
        ax.set_xlabel("round")
        ax.set_ylabel(ylabel)
        ax.legend()
        fig.tight_layout()
        target = args.compare_dir / f"{stem}.png"
        fig.savefig(target, dpi=150)
        print(f"wrote {target}")


if __name__ == "__main__":
    main()
