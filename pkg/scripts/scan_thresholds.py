#!/usr/bin/env python3
"""Locate, per pair count k, the energy from which the optimum stays all-equal."""

import argparse

from gausscode.optimize import OptimSettings, threshold_scan

GRIDS = {
    3: [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 20.0],
    4: [2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 20.0],
    5: [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 20.0],
    6: [2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 19.0, 20.0, 21.0],
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k", type=int, nargs="*", default=[3, 4, 5, 6])
    parser.add_argument("--hops", type=int, default=60)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    settings = OptimSettings(hops=args.hops, seed=args.seed)
    for k in args.k:
        threshold = threshold_scan(k, GRIDS[k], settings)
        print(f"k = {k}: all-equal from E = {threshold} on the grid {GRIDS[k]}")


if __name__ == "__main__":
    main()
