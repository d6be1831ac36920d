"""Scan the heptagon 7-subdivision over rho and print where d_M dips below 1.

    python3 scripts/heptagon_scan.py [n_points] [csv_path]
"""

import csv
import sys

import numpy as np

from reldiam.constructions import HEPTAGON_RHO_RANGE, heptagon_counterexample
from reldiam.subdivision import d_M


def main(argv):
    n = int(argv[1]) if len(argv) > 1 else 60
    path = argv[2] if len(argv) > 2 else None
    rows = []
    for rho in np.linspace(*HEPTAGON_RHO_RANGE, n):
        S = heptagon_counterexample(float(rho))
        D = [d for d, _, _ in S.diameters]
        rows.append((float(rho), d_M(S).value, *D))
    best = min(rows, key=lambda r: r[1])
    below = [r[0] for r in rows if r[1] < 1.0]
    for r in rows:
        print(f"rho {r[0]:.5f}  d_M {r[1]:.6f}  " + " ".join(f"{d:.4f}" for d in r[2:]))
    print(f"best rho {best[0]:.5f}  d_M {best[1]:.6f}")
    if below:
        print(f"d_M < 1 for rho in [{min(below):.5f}, {max(below):.5f}] on this grid")
    if path:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["rho", "d_M"] + [f"D{i}" for i in range(7)])
            w.writerows(rows)


if __name__ == "__main__":
    main(sys.argv)
