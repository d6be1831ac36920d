"""Closed-form lower and upper bounds on the maximum relative diameter."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .body import ConvexBody
from .constructions import d_M_standard_formula, hex_root

M_EVEN = {4: 0.5, 6: 0.6749814429, 8: 0.7268684828}
M_CAP = math.pi / 4  # unit-diameter disc, bounds every j >= 10


def m_odd(j: int) -> float:
    """Largest area of a j-gon (j odd) of unit diameter: the regular one."""
    if j < 3 or j % 2 == 0:
        raise ValueError("m_odd needs odd j >= 3")
    return j / 2 * math.cos(math.pi / j) * math.tan(math.pi / (2 * j))


@dataclass(frozen=True)
class PolygonAreaTable:
    m: dict
    m_cap: float = M_CAP

    def __post_init__(self):
        vals = [self.m[j] for j in sorted(self.m)]
        if any(b <= a for a, b in zip(vals, vals[1:])) or max(vals) > self.m_cap:
            raise ValueError("polygon area table must increase and stay below pi/4")

    def __getitem__(self, j: int) -> float:
        return self.m[j] if j in self.m else self.m_cap


@lru_cache(maxsize=1)
def m_table() -> PolygonAreaTable:
    m = {j: m_odd(j) for j in (3, 5, 7, 9)}
    m.update(M_EVEN)
    return PolygonAreaTable(dict(sorted(m.items())))


# ---------------------------------------------------------------------------
# packing LP


def _lp_data():
    t = m_table()
    js = list(range(3, 10))
    # variables: f_3..f_9, f_cap, slack
    obj = np.array([t[j] for j in js] + [t.m_cap, 0.0])
    A = np.array([[1.0] * len(js) + [1.0, 0.0], [float(j) for j in js] + [10.0, 1.0]])
    names = [str(j) for j in js] + ["cap", "slack"]
    return obj, A, names


def lp_packing_constant(k: float = 1.0) -> tuple[float, dict]:
    """Maximize sum f_j m_j subject to sum f_j = k and sum j f_j <= 6k.

    Solved by enumerating basic feasible solutions.  Returns the optimum and
    the optimal assignment (slack omitted, zero entries dropped).
    """
    if not k > 0:
        raise ValueError("k must be positive")
    obj, A, names = _lp_data()
    b = np.array([k, 6.0 * k])
    best = None
    for i, j in itertools.combinations(range(len(names)), 2):
        B = A[:, [i, j]]
        if abs(np.linalg.det(B)) < 1e-12:
            continue
        x = np.linalg.solve(B, b)
        if (x < -1e-12 * k).any():
            continue
        val = obj[i] * x[0] + obj[j] * x[1]
        if best is None or val > best[0] + 1e-12 * k:
            best = (float(val), {names[i]: float(x[0]), names[j]: float(x[1])})
    val, sol = best
    return val, {n: v for n, v in sol.items() if n != "slack" and v > 1e-12 * k}


def integer_packing_optimum(k: int) -> tuple[float, dict]:
    """Brute force over integer assignments; for checking the LP relaxation."""
    obj, _, names = _lp_data()
    weights = [3, 4, 5, 6, 7, 8, 9, 10]
    best = (-1.0, {})

    def rec(i, left, load, acc, val):
        nonlocal best
        if i == len(weights) - 1:
            if load + weights[i] * left <= 6 * k:
                v = val + obj[i] * left
                if v > best[0]:
                    best = (v, dict(acc, **({names[i]: left} if left else {})))
            return
        for n in range(left + 1):
            nl = load + weights[i] * n
            if nl > 6 * k:
                break
            rec(i + 1, left - n, nl, dict(acc, **({names[i]: n} if n else {})), val + obj[i] * n)

    rec(0, k, 0, {}, 0.0)
    return best


# ---------------------------------------------------------------------------
# bounds


def bound_isodiametric(C: ConvexBody, k: int) -> float:
    if k < 1:
        raise ValueError("k must be >= 1")
    return math.sqrt(C.area / k) * math.sqrt(4.0 / math.pi)


@dataclass(frozen=True)
class PackingBound:
    main: float
    rigorous: float
    constant: float


def packing_constant() -> float:
    return lp_packing_constant(1.0)[0]


def bound_hexagonal_lower(C: ConvexBody, k: int, constant: float | None = None) -> PackingBound:
    """Main term sqrt(A/k)/sqrt(c) and the positive root of c k d^2 + P d = A."""
    if k < 1:
        raise ValueError("k must be >= 1")
    c = packing_constant() if constant is None else constant
    A, P = C.area, C.perimeter
    main = math.sqrt(A / k) / math.sqrt(c)
    a = c * k
    # stable form of (-P + sqrt(P^2 + 4aA)) / (2a)
    root = 2 * A / (P + math.sqrt(P * P + 4 * a * A))
    return PackingBound(main, root, c)


def bound_standard(C: ConvexBody, k: int) -> float:
    return d_M_standard_formula(C, k)


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class BoundEntry:
    value: float
    kind: str  # lower | upper | estimate
    source: str
    applies_to: str  # partitions | subdivisions


@dataclass
class BoundReport:
    body_id: str
    k: int
    bounds: dict = field(default_factory=dict)

    def lower_bounds(self, applies_to: str = "subdivisions") -> dict:
        ok = ("subdivisions",) if applies_to == "subdivisions" else ("subdivisions", "partitions")
        return {n: e for n, e in self.bounds.items() if e.kind == "lower" and e.applies_to in ok}

    def best_lower(self, applies_to: str = "subdivisions") -> float:
        lows = self.lower_bounds(applies_to)
        return max((e.value for e in lows.values()), default=0.0)

    def inconsistencies(self, slack: float = 1e-9) -> list[str]:
        out = []
        for n, up in self.bounds.items():
            if up.kind != "upper":
                continue
            for m, lo in self.lower_bounds(up.applies_to).items():
                if lo.value > up.value + slack:
                    out.append(f"{m}={lo.value:.12g} exceeds {n}={up.value:.12g}")
        return out

    def to_dict(self) -> dict:
        return {
            "body_id": self.body_id,
            "k": self.k,
            "bounds": {n: {"value": e.value, "kind": e.kind, "source": e.source, "applies_to": e.applies_to} for n, e in self.bounds.items()},
        }

    def to_markdown(self) -> str:
        lines = [f"Bounds for `{self.body_id}`, k = {self.k}", "", "| bound | value | kind | applies to | source |", "|---|---|---|---|---|"]
        for n, e in self.bounds.items():
            lines.append(f"| {n} | {e.value:.12g} | {e.kind} | {e.applies_to} | {e.source} |")
        return "\n".join(lines) + "\n"


def bound_report(C: ConvexBody, k: int, body_id: str | None = None, with_hex: bool = True) -> BoundReport:
    """All bounds that apply to (C, k), flagged by regime."""
    rep = BoundReport(body_id or C.name or "body", k)
    try:
        std = bound_standard(C, k) if k >= 3 else None
    except ValueError:  # not k-symmetric
        std = None
    m = C.metrics
    if std is not None:
        sub = "subdivisions" if k <= 6 else "partitions"
        rep.bounds["standard"] = BoundEntry(std, "lower", "max{R, 2 r sin(pi/k)}", sub)
        rep.bounds["circumradius"] = BoundEntry(m.circumradius, "lower", "R", sub)
        rep.bounds["inradius_chord"] = BoundEntry(2 * m.inradius * math.sin(math.pi / k), "lower", "2 r sin(pi/k)", "subdivisions")
    rep.bounds["isodiametric"] = BoundEntry(bound_isodiametric(C, k), "lower", "sqrt(A/k) sqrt(4/pi)", "subdivisions")
    pk = bound_hexagonal_lower(C, k)
    rep.bounds["packing_root"] = BoundEntry(pk.rigorous, "lower", "positive root of c k d^2 + P d = A", "subdivisions")
    rep.bounds["packing_main"] = BoundEntry(pk.main, "estimate", "sqrt(A/k)/sqrt(c), c = (m5+m7)/2", "subdivisions")
    if with_hex and k >= 5:
        rep.bounds["hex_upper"] = BoundEntry(hex_root(C, k), "upper", "hexagonal lattice cell diameter d_k", "subdivisions")
    return rep
