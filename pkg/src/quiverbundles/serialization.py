"""JSON document encoding for representation and bundle instances.

A document carries the quiver (vertices with a framing flag, base arrows),
a kind tag, and per-doubled-arrow data blocks: "p/q" scalar matrices for
representations, form matrices (null or a coefficient list per entry) for
bundles, plus dims and an optional moment level, or multidegrees and twist
degrees.  Schema and cross-reference problems are reported with the JSON
pointer of the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Mapping

import jsonschema

from .bundles import SplitBundle, TwistData, TwistedQuiverBundle
from .linalg import Matrix
from .polynomials import HomogPoly, PolyMatrix
from .quivers import Arrow, DimensionVector, DoubleQuiver, Quiver, double
from .representations import FramedRep

VERSION = 1


class DocumentError(ValueError):
    """Input document problem, carrying the JSON pointer of the field."""

    def __init__(self, pointer: str, message: str) -> None:
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}")


def _schema() -> dict:
    text = resources.files("quiverbundles").joinpath("schema/instance-v1.json").read_text()
    return json.loads(text)


_VALIDATOR = jsonschema.Draft202012Validator(_schema())


def schema_errors(doc: object) -> list[tuple[str, str]]:
    """(pointer, message) schema violations, sorted by document position."""
    found = sorted(
        _VALIDATOR.iter_errors(doc), key=lambda e: [str(p) for p in e.absolute_path]
    )
    out = []
    for err in found:
        pointer = "/" + "/".join(str(p) for p in err.absolute_path)
        out.append((pointer, err.message))
    return out


@dataclass(frozen=True)
class InstanceDocument:
    """Parsed document: exactly one of rep or bundle is set."""

    kind: str
    rep: FramedRep | None = None
    bundle: TwistedQuiverBundle | None = None
    level: Mapping[str, Fraction] = field(default_factory=dict)
    meta: Mapping[str, object] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# encoding


def _quiver_block(dq: DoubleQuiver) -> dict:
    vertices = []
    for v in dq.vertices:
        entry: dict = {"name": v}
        if v == dq.framing:
            entry["framing"] = True
        vertices.append(entry)
    arrows = [{"name": a.name, "tail": a.tail, "head": a.head} for a in dq.base.arrows]
    return {"vertices": vertices, "arrows": arrows}


def encode_scalar_matrix(m: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m]


def encode_form_matrix(m: PolyMatrix) -> list[list[object]]:
    return [
        [None if p.is_zero() else [str(c) for c in p.coeffs] for p in row] for row in m
    ]


def rep_to_doc(
    x: FramedRep,
    level: Mapping[str, object] | None = None,
    meta: Mapping[str, object] | None = None,
) -> dict:
    doc: dict = {
        "version": VERSION,
        "kind": "rep",
        "quiver": _quiver_block(x.double),
        "dims": {v: x.dims[v] for v in x.double.vertices},
        "data": {a.name: encode_scalar_matrix(x.x[a.name]) for a in x.double.arrows},
    }
    if level:
        doc["lambda"] = {v: str(Fraction(c)) for v, c in level.items()}
    if meta:
        doc["meta"] = dict(meta)
    return doc


def bundle_to_doc(e: TwistedQuiverBundle, meta: Mapping[str, object] | None = None) -> dict:
    doc: dict = {
        "version": VERSION,
        "kind": "bundle",
        "quiver": _quiver_block(e.double),
        "bundles": {v: list(e.bundles[v].multidegree) for v in e.double.vertices},
        "twist": {a.name: e.twist.degree(a.name) for a in e.double.arrows},
        "data": {a.name: encode_form_matrix(e.phi[a.name]) for a in e.double.arrows},
    }
    if meta:
        doc["meta"] = dict(meta)
    return doc


# ---------------------------------------------------------------------------
# decoding


def _parse_quiver(block: dict) -> DoubleQuiver:
    names = [v["name"] for v in block["vertices"]]
    framing = [v["name"] for v in block["vertices"] if v.get("framing")]
    if len(framing) > 1:
        raise DocumentError("/quiver/vertices", "more than one framing vertex")
    declared = set(names)
    for i, a in enumerate(block["arrows"]):
        for end in ("tail", "head"):
            if a[end] not in declared:
                raise DocumentError(
                    f"/quiver/arrows/{i}/{end}", f"unknown vertex {a[end]!r}"
                )
    try:
        q = Quiver(
            tuple(names),
            tuple(Arrow(a["name"], a["tail"], a["head"]) for a in block["arrows"]),
            framing=framing[0] if framing else None,
        )
    except ValueError as err:
        raise DocumentError("/quiver", str(err)) from None
    return double(q)


def _require_keys(block: Mapping[str, object], want: set[str], pointer: str) -> None:
    missing = sorted(want - set(block))
    extra = sorted(set(block) - want)
    if missing:
        raise DocumentError(pointer, f"missing keys {missing}")
    if extra:
        raise DocumentError(pointer, f"unknown keys {extra}")


def _parse_scalar_matrix(raw: list, rows: int, cols: int, pointer: str) -> Matrix:
    if len(raw) != rows or any(len(r) != cols for r in raw):
        raise DocumentError(pointer, f"expected a {rows}x{cols} matrix")
    for i, row in enumerate(raw):
        for j, entry in enumerate(row):
            if not isinstance(entry, str):
                raise DocumentError(f"{pointer}/{i}/{j}", "expected a \"p/q\" scalar")
    return tuple(tuple(Fraction(x) for x in row) for row in raw)


def _parse_form_matrix(raw: list, rows: int, cols: int, pointer: str) -> PolyMatrix:
    if len(raw) != rows or any(len(r) != cols for r in raw):
        raise DocumentError(pointer, f"expected a {rows}x{cols} matrix")
    out = []
    for i, row in enumerate(raw):
        entries = []
        for j, entry in enumerate(row):
            if entry is None:
                entries.append(HomogPoly.zero())
            elif isinstance(entry, list):
                entries.append(HomogPoly.of(len(entry) - 1, [Fraction(c) for c in entry]))
            else:
                raise DocumentError(
                    f"{pointer}/{i}/{j}", "expected null or a coefficient list"
                )
        out.append(tuple(entries))
    return tuple(out)


def _parse_rep(doc: dict, dq: DoubleQuiver) -> tuple[FramedRep, dict[str, Fraction]]:
    if "dims" not in doc:
        raise DocumentError("/dims", "representation documents need dims")
    for key in ("bundles", "twist"):
        if key in doc:
            raise DocumentError(f"/{key}", "not a representation field")
    _require_keys(doc["dims"], set(dq.vertices), "/dims")
    dims = DimensionVector.of(dq, doc["dims"])
    _require_keys(doc["data"], {a.name for a in dq.arrows}, "/data")
    x = {
        a.name: _parse_scalar_matrix(
            doc["data"][a.name], dims[a.head], dims[a.tail], f"/data/{a.name}"
        )
        for a in dq.arrows
    }
    level: dict[str, Fraction] = {}
    ordinary = set(dq.ordinary_vertices)
    for v, c in doc.get("lambda", {}).items():
        if v not in ordinary:
            raise DocumentError(f"/lambda/{v}", "not an ordinary vertex")
        level[v] = Fraction(c)
    return FramedRep(dq, dims, x), level


def _parse_bundle(doc: dict, dq: DoubleQuiver) -> TwistedQuiverBundle:
    for key in ("bundles", "twist"):
        if key not in doc:
            raise DocumentError(f"/{key}", "bundle documents need this field")
    if "dims" in doc or "lambda" in doc:
        raise DocumentError("/dims" if "dims" in doc else "/lambda", "not a bundle field")
    _require_keys(doc["bundles"], set(dq.vertices), "/bundles")
    bundles = {v: SplitBundle(tuple(doc["bundles"][v])) for v in dq.vertices}
    _require_keys(doc["twist"], {a.name for a in dq.arrows}, "/twist")
    # canonical arrow order, so equal twists compare equal after a roundtrip
    twist = TwistData(tuple((a.name, int(doc["twist"][a.name])) for a in dq.arrows))
    _require_keys(doc["data"], {a.name for a in dq.arrows}, "/data")
    phi = {
        a.name: _parse_form_matrix(
            doc["data"][a.name],
            bundles[a.head].rank,
            bundles[a.tail].rank,
            f"/data/{a.name}",
        )
        for a in dq.arrows
    }
    try:
        return TwistedQuiverBundle(dq, bundles, twist, phi)
    except (ValueError, KeyError) as err:
        raise DocumentError("/data", str(err)) from None


def parse_document(doc: object) -> InstanceDocument:
    """Validate against the schema, resolve references, build the instance."""
    errors = schema_errors(doc)
    if errors:
        raise DocumentError(*errors[0])
    assert isinstance(doc, dict)
    dq = _parse_quiver(doc["quiver"])
    meta = dict(doc.get("meta", {}))
    if doc["kind"] == "rep":
        rep, level = _parse_rep(doc, dq)
        return InstanceDocument("rep", rep=rep, level=level, meta=meta)
    bundle = _parse_bundle(doc, dq)
    return InstanceDocument("bundle", bundle=bundle, meta=meta)


def instance_to_doc(item: InstanceDocument) -> dict:
    if item.kind == "rep":
        assert item.rep is not None
        return rep_to_doc(item.rep, level=item.level, meta=item.meta)
    assert item.bundle is not None
    return bundle_to_doc(item.bundle, meta=item.meta)


def dumps(doc: dict) -> str:
    """Canonical bytes: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
