"""JSON encoding of bodies, partitions and subdivisions.

Floats go through ``json`` which emits the shortest repr, so a parse of an
emitted document reproduces every coordinate bit for bit.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema
from referencing import Registry, Resource

from .body import ConvexBody
from .geometry import Arc, Polyline, Segment
from .subdivision import KPartition, KSubdivision


class FormatError(ValueError):
    pass


def _pt(p) -> list:
    return [float(p[0]), float(p[1])]


def piece_to_json(p) -> dict:
    if isinstance(p, Segment):
        return {"kind": "segment", "a": _pt(p.a), "b": _pt(p.b)}
    return {"kind": "arc", "a": _pt(p.a), "b": _pt(p.b), "center": _pt(p.center), "radius": float(p.radius)}


def piece_from_json(d: dict):
    if d["kind"] == "segment":
        return Segment(tuple(d["a"]), tuple(d["b"]))
    if d["kind"] == "arc":
        return Arc(tuple(d["a"]), tuple(d["b"]), tuple(d["center"]), float(d["radius"]))
    raise FormatError(f"unknown piece kind {d['kind']!r}")


def body_to_json(C: ConvexBody) -> dict:
    out = {"pieces": [piece_to_json(p) for p in C.pieces], "center": _pt(C.center), "symmetry_order": int(C.symmetry_order)}
    if C.name:
        out["name"] = C.name
    return out


def body_from_json(d: dict) -> ConvexBody:
    validate_document(d, "body")
    pcs = [piece_from_json(p) for p in d["pieces"]]
    return ConvexBody(pcs, tuple(d["center"]), int(d.get("symmetry_order", 1)), name=d.get("name", ""))


def partition_to_json(P: KPartition) -> dict:
    return {"body": body_to_json(P.body), "common_point": _pt(P.common_point), "curves": [[_pt(v) for v in cv] for cv in P.curves]}


def partition_from_json(d: dict) -> KPartition:
    validate_document(d, "partition")
    C = body_from_json(d["body"])
    return KPartition(C, tuple(d["common_point"]), tuple(Polyline([tuple(v) for v in cv]) for cv in d["curves"]))


def subdivision_to_json(S: KSubdivision) -> dict:
    return {"body": body_to_json(S.body), "regions": [[piece_to_json(p) for p in r] for r in S.regions]}


def subdivision_from_json(d: dict) -> KSubdivision:
    validate_document(d, "subdivision")
    C = body_from_json(d["body"])
    return KSubdivision(C, tuple(tuple(piece_from_json(p) for p in r) for r in d["regions"]))


SCHEMA_NAMES = ("piece", "body", "partition", "subdivision", "bound_report", "search_result")


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    with resources.files("reldiam").joinpath("schemas", f"{name}.schema.json").open() as fh:
        return json.load(fh)


@lru_cache(maxsize=1)
def _registry() -> Registry:
    return Registry().with_resources((load_schema(n)["$id"], Resource.from_contents(load_schema(n))) for n in SCHEMA_NAMES)


def validate_document(d, name: str) -> None:
    """Check ``d`` against a shipped schema; raises FormatError."""
    schema = load_schema(name)
    cls = jsonschema.validators.validator_for(schema)
    try:
        cls(schema, registry=_registry()).validate(d)
    except jsonschema.ValidationError as e:
        raise FormatError(f"{name} document: {e.message}") from e


def load(path):
    """Read a body, partition or subdivision from a JSON file."""
    with open(path) as fh:
        d = json.load(fh)
    return from_json(d)


def from_json(d: dict):
    if not isinstance(d, dict):
        raise FormatError("expected a JSON object")
    try:
        if "regions" in d:
            return subdivision_from_json(d)
        if "curves" in d:
            return partition_from_json(d)
        if "pieces" in d:
            return body_from_json(d)
    except (KeyError, TypeError) as e:
        raise FormatError(f"malformed document: {e}") from e
    raise FormatError("not a body, partition or subdivision document")


def to_json(obj) -> dict:
    if isinstance(obj, ConvexBody):
        return body_to_json(obj)
    if isinstance(obj, KPartition):
        return partition_to_json(obj)
    if isinstance(obj, KSubdivision):
        return subdivision_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dump(obj, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_json(obj), fh, indent=1)
        fh.write("\n")


__all__ = ["FormatError", "dump", "from_json", "load", "to_json", "validate_document"]
