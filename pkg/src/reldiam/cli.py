"""Command-line front end.

Exit codes: 0 success, 1 invalid arguments or input, 2 computation failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import experiments
from .body import BodyError, ConvexBody, SymmetryError, make_circle_kgon_intersection, make_disc, make_regular_kgon, make_reuleaux
from .bounds import bound_report
from .constructions import (
    circle8_counterexample,
    heptagon_counterexample,
    hex_subdivision,
    optimal_body,
    quotient,
    search_heptagon,
    standard_partition,
)
from .geometry import GeometryError
from .optimizer import SearchConfig, optimize_partition, optimize_subdivision
from .serialize import FormatError, dump, load, subdivision_to_json, validate_document
from .subdivision import KPartition, KSubdivision, d_M, regions_of_partition, validate
from .svg import write_svg


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def g(v: float) -> str:
    return f"{float(v):.12g}"


def _load(path, want=None):
    try:
        obj = load(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from e
    except (FormatError, GeometryError) as e:
        raise UsageError(f"{path}: {e}") from e
    if want is not None and not isinstance(obj, want):
        raise UsageError(f"{path} does not hold a {want.__name__}")
    return obj


def _pos_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _emit(obj, out):
    if out:
        dump(obj, out)
        print(f"wrote {out}")


def _print_metrics(C: ConvexBody):
    m = C.metrics
    print(f"body {C.name or 'body'}  symmetry_order {C.symmetry_order}")
    print(f"inradius {g(m.inradius)}")
    print(f"circumradius {g(m.circumradius)}")
    print(f"area {g(m.area)}")
    print(f"perimeter {g(m.perimeter)}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_body(a):
    try:
        if a.kind == "disc":
            C = make_disc(a.radius)
        elif a.kind == "kgon":
            C = make_regular_kgon(a.k, a.radius)
        elif a.kind == "reuleaux":
            C = make_reuleaux(a.k, a.width)
        else:
            if a.inradius is None:
                raise UsageError("circle-kgon needs --inradius")
            C = make_circle_kgon_intersection(a.k, a.inradius, a.radius)
    except BodyError as e:
        raise UsageError(str(e)) from e
    _print_metrics(C)
    _emit(C, a.out)


def cmd_partition(a):
    C = _load(a.body, ConvexBody)
    try:
        P = standard_partition(C, a.k)
    except SymmetryError as e:
        raise UsageError(str(e)) from e
    w = d_M(P)
    print(f"d_M {g(w.value)}")
    for cv in P.curves:
        print("curve " + " ".join(f"({g(p.x)}, {g(p.y)})" for p in cv))
    _emit(P, a.out)


def cmd_evaluate(a):
    obj = _load(a.input)
    if isinstance(obj, ConvexBody):
        _print_metrics(obj)
        return
    S = regions_of_partition(obj) if isinstance(obj, KPartition) else obj
    bad = validate(S)
    for v in bad:
        print(f"violation {v.condition} regions {list(v.regions)} {v.detail}")
    if bad and not a.force:
        raise UsageError("input is not a valid subdivision")
    w = d_M(S, method=a.method, max_sagitta=a.max_sagitta)
    print(f"k {S.k}")
    print(f"d_M {g(w.value)}")
    print(f"region {w.region_index}")
    print(f"witness ({g(w.a.x)}, {g(w.a.y)}) ({g(w.b.x)}, {g(w.b.y)})")
    for i, (d, _, _) in enumerate(S.diameters):
        print(f"D[{i}] {g(d)}")


def cmd_bounds(a):
    C = _load(a.body, ConvexBody)
    rep = bound_report(C, a.k, with_hex=not a.no_hex)
    d = rep.to_dict()
    validate_document(d, "bound_report")
    if a.json:
        with open(a.json, "w") as fh:
            json.dump(d, fh, indent=1)
    if a.markdown:
        print(rep.to_markdown(), end="")
    else:
        for n, e in rep.bounds.items():
            print(f"{n} {g(e.value)} {e.kind} {e.applies_to}")
    for msg in rep.inconsistencies():
        print(f"inconsistent {msg}")


def cmd_optimal(a):
    if a.k < 3:
        raise UsageError("k must be >= 3")
    B = optimal_body(a.k)
    _print_metrics(B)
    print(f"quotient {g(quotient(B, a.k))}")
    _emit(B, a.out)


def cmd_hexify(a):
    C = _load(a.body, ConvexBody)
    if a.k < 5:
        raise UsageError("hexify needs k >= 5")
    S, dk = hex_subdivision(C, a.k)
    print(f"d_k {g(dk)}")
    print(f"d_M {g(d_M(S).value)}")
    print(f"regions {S.k}")
    _emit(S, a.out)


def cmd_counterexample(a):
    if a.name == "heptagon7":
        if a.rho is None:
            rho, _ = search_heptagon()
        else:
            rho = a.rho
        try:
            S = heptagon_counterexample(rho)
        except GeometryError as e:
            raise UsageError(str(e)) from e
        print(f"rho {g(rho)}")
    else:
        S = circle8_counterexample()
    for i, (d, _, _) in enumerate(S.diameters):
        print(f"D[{i}] {g(d)}")
    print(f"d_M {g(d_M(S).value)}")
    _emit(S, a.out)


def cmd_search(a):
    C = _load(a.body, ConvexBody)
    try:
        cfg = SearchConfig(a.seed, a.iterations, a.move_scale, a.restarts, a.schedule, a.T0, a.cooling)
    except ValueError as e:
        raise UsageError(str(e)) from e
    if a.k < 3:
        raise UsageError("k must be >= 3")
    res = (optimize_partition if a.mode == "partition" else optimize_subdivision)(C, a.k, cfg)
    print(f"best_value {g(res.best_value)}")
    print(f"bounds_gap {g(res.bounds_gap)}")
    if a.trace:
        with open(a.trace, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["iteration", "value"])
            w.writerows(res.trace)
    if a.out:
        doc = {"best": subdivision_to_json(res.best), "best_value": res.best_value, "bounds_gap": res.bounds_gap, "trace": [list(t) for t in res.trace]}
        validate_document(doc, "search_result")
        with open(a.out, "w") as fh:
            json.dump(doc, fh, indent=1)
        print(f"wrote {a.out}")


def cmd_render(a):
    obj = _load(a.input)
    write_svg(obj, a.out, title=a.title)
    print(f"wrote {a.out}")


def cmd_repro(a):
    names = list(experiments.EXPERIMENTS) if a.name == "all" else [a.name]
    failed = []
    for n in names:
        rep = experiments.run(n, a.out_dir)
        print(f"{n}: {'PASS' if rep['passed'] else 'FAIL'}")
        if not rep["passed"]:
            failed.append(n)
    if a.strict and failed:
        return 2
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="reldiam", description="Maximum relative diameter of k-partitions and k-subdivisions of planar convex bodies.")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("body", help="build a body and print its metrics")
    s.add_argument("kind", choices=["disc", "kgon", "reuleaux", "circle-kgon"])
    s.add_argument("--k", type=_pos_int, default=3)
    s.add_argument("--radius", type=float, default=1.0, help="disc radius or k-gon circumradius")
    s.add_argument("--width", type=float, default=1.0)
    s.add_argument("--inradius", type=float, help="k-gon inradius for circle-kgon")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_body)

    s = sub.add_parser("partition", help="standard k-partition of a body")
    s.add_argument("--body", required=True)
    s.add_argument("--k", type=_pos_int, required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_partition)

    s = sub.add_parser("evaluate", help="validate and evaluate d_M")
    s.add_argument("input")
    s.add_argument("--method", choices=["exact", "sampled"], default="exact")
    s.add_argument("--max-sagitta", type=float, default=1e-6)
    s.add_argument("--force", action="store_true", help="evaluate even if validation fails")
    s.set_defaults(fn=cmd_evaluate)

    s = sub.add_parser("bounds", help="bound report for (body, k)")
    s.add_argument("--body", required=True)
    s.add_argument("--k", type=_pos_int, required=True)
    s.add_argument("--json")
    s.add_argument("--markdown", action="store_true")
    s.add_argument("--no-hex", action="store_true")
    s.set_defaults(fn=cmd_bounds)

    s = sub.add_parser("optimal", help="optimal body for k")
    s.add_argument("--k", type=_pos_int, required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_optimal)

    s = sub.add_parser("hexify", help="hexagonal-lattice k-subdivision")
    s.add_argument("--body", required=True)
    s.add_argument("--k", type=_pos_int, required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_hexify)

    s = sub.add_parser("counterexample", help="heptagon 7-subdivision or circle 8-subdivision")
    s.add_argument("name", choices=["heptagon7", "circle8"])
    s.add_argument("--rho", type=float)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_counterexample)

    s = sub.add_parser("search", help="local search for small d_M")
    s.add_argument("--body", required=True)
    s.add_argument("--k", type=_pos_int, required=True)
    s.add_argument("--mode", choices=["partition", "subdivision"], default="subdivision")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--iterations", type=int, default=2000)
    s.add_argument("--restarts", type=int, default=4)
    s.add_argument("--move-scale", type=float, default=0.05)
    s.add_argument("--schedule", choices=["greedy", "anneal"], default="greedy")
    s.add_argument("--T0", type=float, default=0.01)
    s.add_argument("--cooling", type=float, default=0.999)
    s.add_argument("--trace")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_search)

    s = sub.add_parser("render", help="SVG figure")
    s.add_argument("input")
    s.add_argument("--out", required=True)
    s.add_argument("--title")
    s.set_defaults(fn=cmd_render)

    s = sub.add_parser("repro", help="reproduction experiments")
    s.add_argument("name", choices=list(experiments.EXPERIMENTS) + ["all"])
    s.add_argument("--out-dir", default="repro_out")
    s.add_argument("--strict", action="store_true", help="exit 2 if any experiment fails")
    s.set_defaults(fn=cmd_repro)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        rc = args.fn(args)
    except UsageError as e:
        print(f"reldiam: {e}", file=sys.stderr)
        return 1
    except (GeometryError, ArithmeticError, RuntimeError, ValueError) as e:
        print(f"reldiam: computation failed: {e}", file=sys.stderr)
        return 2
    return rc or 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
