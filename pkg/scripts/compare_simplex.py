#!/usr/bin/env python3
"""Sweep the two-antipodal-vectors-plus-zeros code against the regular simplex.

For m >= 7 the pair-plus-origin configuration beats the m-simplex at equal
(and small) energy; at larger energies the simplex wins on point count.
"""

import argparse

import numpy as np

from gausscode.analytic import p_simplex, p_with_origin
from gausscode.configs import AntipodalLengths

DEFAULT_SWEEP = [3e-4, 1e-3, 2e-3, 4e-3, 7e-3, 1e-2, 2e-2, 0.1, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=7)
    parser.add_argument("--energies", type=float, nargs="*", default=DEFAULT_SWEEP)
    args = parser.parse_args()

    print(f"{'E':>10} {'pair+origin':>14} {f'{args.m}-simplex':>14} {'difference':>14}")
    best = None
    for e in args.energies:
        pair = p_with_origin(AntipodalLengths((float(np.sqrt(e / 2)),), True)).value
        simplex = p_simplex(args.m, float(np.sqrt(e / args.m))).value
        diff = pair - simplex
        if best is None or diff > best[1]:
            best = (e, diff)
        print(f"{e:>10g} {pair:>14.8f} {simplex:>14.8f} {diff:>+14.8f}")
    print(f"\nlargest margin for the pair-plus-origin code: {best[1]:+.2e} at E = {best[0]:g}")


if __name__ == "__main__":
    main()
