"""Run every reproduction experiment and write JSON, Markdown and SVG figures.

    python3 scripts/reproduce_all.py [out_dir]
"""

import sys
import time
from pathlib import Path

from reldiam import experiments
from reldiam.body import make_disc, make_regular_kgon
from reldiam.constructions import circle8_counterexample, heptagon_counterexample, hex_subdivision, optimal_body, standard_partition
from reldiam.svg import write_svg


def figures(out: Path, heptagon_rho: float) -> None:
    write_svg(heptagon_counterexample(heptagon_rho), out / "heptagon7.svg", title="heptagon 7-subdivision")
    write_svg(circle8_counterexample(), out / "circle8.svg", title="circle 8-subdivision")
    write_svg(standard_partition(make_regular_kgon(6), 6), out / "hexagon_standard6.svg", title="standard 6-partition")
    write_svg(standard_partition(optimal_body(5), 5), out / "optimal5_standard.svg", title="optimal body, k = 5")
    write_svg(hex_subdivision(make_disc(), 100)[0], out / "disc_hex100.svg", title="hexagonal 100-subdivision")


def main(argv):
    out = Path(argv[1] if len(argv) > 1 else "repro_out")
    out.mkdir(parents=True, exist_ok=True)
    reports = {}
    for name in experiments.EXPERIMENTS:
        t = time.perf_counter()
        reports[name] = rep = experiments.run(name, out)
        print(f"{name:16s} {'PASS' if rep['passed'] else 'FAIL'}  {time.perf_counter() - t:6.1f}s")
    figures(out, reports["heptagon"]["rho"])
    print(f"reports and figures in {out}/")
    return int(not all(r["passed"] for r in reports.values()))


if __name__ == "__main__":
    sys.exit(main(sys.argv))
