"""Regenerate src/reldiam/data/optimal_table_golden.json at 40 digits.

The optimal body for k is the unit disc cut by the regular k-gon of inradius
a = 1/(2 sin(pi/k)); its d_M is 1, so the quotient is 1/area.
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
OUT = Path(__file__).resolve().parents[1] / "src" / "reldiam" / "data" / "optimal_table_golden.json"


def area(k):
    a = 1 / (2 * mp.sin(mp.pi / k))
    if a >= 1:
        return +mp.pi
    if a / mp.cos(mp.pi / k) <= 1:
        return k * a * a * mp.tan(mp.pi / k)
    return k * (a * mp.sqrt(1 - a * a) + mp.pi / k - mp.acos(a))


def main():
    rows = [{"k": k, "area": float(area(k)), "d_M": 1.0, "quotient": float(1 / area(k))} for k in range(3, 11)]
    doc = {"description": "optimal body per k: area from the closed form at 40 digits; d_M = 1 by construction", "rows": rows}
    OUT.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
