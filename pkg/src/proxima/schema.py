"""Strict, versioned JSON format for instance documents, and the loader.

A document describes one instance end to end: ground space, point registry,
the two sets, the mapping, and optional tolerance/truncation/meta fields.
The schema rejects unknown fields so golden files cannot drift silently.
Numbers may be written as JSON numbers or as decimal/fraction strings
("1.5", "2/3", "1e-9") where exactness matters; strings are parsed through
``fractions.Fraction`` and converted to float once.
"""

from __future__ import annotations

import json
from dataclasses import replace
from fractions import Fraction
from pathlib import Path
from typing import Any, NamedTuple

import numpy as np
from jsonschema import Draft202012Validator

from proxima.metric import (
    SET_FINITE,
    SET_INTERVALS,
    SET_PROGRESSION,
    SET_SEGMENT,
    SPACE_MATRIX,
    MetricInstance,
    Point,
    SpaceSet,
    ValidationReport,
    validate_instance,
)
from proxima.proximity import (
    MAP_AFFINE_2D,
    MAP_PIECEWISE,
    MAP_TABLE,
    AffinePiece,
    BoundaryEntry,
    MappingSpec,
    truncate_instance,
    validate_mapping,
)

SCHEMA_VERSION = 1

_NUMBER = {
    "oneOf": [
        {"type": "number"},
        {
            "type": "string",
            "pattern": r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\s*$|^\s*[+-]?\d+/\d+\s*$",
        },
    ]
}
_PAIR = {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2}

DOCUMENT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "space", "sets", "mapping"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "meta": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"name": {"type": "string"}, "notes": {"type": "string"}},
        },
        "space": {
            "oneOf": [
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["kind"],
                    "properties": {"kind": {"enum": ["euclidean-1d", "euclidean-2d"]}},
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["kind", "distances"],
                    "properties": {
                        "kind": {"const": "matrix"},
                        "distances": {
                            "type": "array",
                            "items": {"type": "array", "items": _NUMBER, "minItems": 1},
                            "minItems": 1,
                        },
                    },
                },
            ]
        },
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id"],
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "coords": {"type": "array", "items": _NUMBER, "minItems": 1, "maxItems": 2},
                    "label": {"type": "string"},
                },
            },
        },
        "sets": {
            "type": "object",
            "additionalProperties": False,
            "required": ["a", "b"],
            "properties": {"a": {"$ref": "#/$defs/set"}, "b": {"$ref": "#/$defs/set"}},
        },
        "mapping": {"$ref": "#/$defs/mapping"},
        "epsilon": _NUMBER,
        "truncation": {"type": "integer", "minimum": 3},
        "self_map": {"type": "boolean"},
        "sampled": {"type": "boolean"},
    },
    "$defs": {
        "set": {
            "oneOf": [
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["kind", "members"],
                    "properties": {
                        "kind": {"const": "finite"},
                        "members": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
                    },
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["kind", "intervals"],
                    "properties": {
                        "kind": {"const": "intervals"},
                        "intervals": {"type": "array", "items": _PAIR, "minItems": 1},
                    },
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["kind", "endpoints"],
                    "properties": {
                        "kind": {"const": "segment"},
                        "endpoints": {"type": "array", "items": _PAIR, "minItems": 2, "maxItems": 2},
                    },
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["kind", "start", "step"],
                    "properties": {
                        "kind": {"const": "progression"},
                        "start": _NUMBER,
                        "step": _NUMBER,
                    },
                },
            ]
        },
        "mapping": {
            "oneOf": [
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["kind", "entries"],
                    "properties": {
                        "kind": {"const": "table"},
                        "entries": {
                            "type": "array",
                            "minItems": 1,
                            "items": {
                                "type": "object",
                                "additionalProperties": False,
                                "required": ["from", "to"],
                                "properties": {
                                    "from": {"type": "integer", "minimum": 0},
                                    "to": {
                                        "oneOf": [
                                            {
                                                "type": "object",
                                                "additionalProperties": False,
                                                "required": ["point"],
                                                "properties": {"point": {"type": "integer", "minimum": 0}},
                                            },
                                            {
                                                "type": "object",
                                                "additionalProperties": False,
                                                "required": ["value"],
                                                "properties": {"value": _NUMBER},
                                            },
                                            {
                                                "type": "object",
                                                "additionalProperties": False,
                                                "required": ["coords"],
                                                "properties": {"coords": _PAIR},
                                            },
                                        ]
                                    },
                                },
                            },
                        },
                    },
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["kind", "pieces"],
                    "properties": {
                        "kind": {"const": "piecewise-affine"},
                        "pieces": {
                            "type": "array",
                            "minItems": 1,
                            "items": {
                                "type": "object",
                                "additionalProperties": False,
                                "required": ["if", "slope", "offset"],
                                "properties": {
                                    "if": {"enum": ["eq", "le", "ge", "range", "always"]},
                                    "bounds": {"type": "array", "items": _NUMBER, "maxItems": 2},
                                    "slope": _NUMBER,
                                    "offset": _NUMBER,
                                },
                            },
                        },
                    },
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["kind", "matrix", "offset"],
                    "properties": {
                        "kind": {"const": "affine-2d"},
                        "matrix": {"type": "array", "items": _PAIR, "minItems": 2, "maxItems": 2},
                        "offset": _PAIR,
                    },
                },
            ]
        },
    },
}

_VALIDATOR = Draft202012Validator(DOCUMENT_SCHEMA)


class SchemaError(ValueError):
    """The document failed to parse or violates the schema."""


class InstanceValidationError(ValueError):
    """The document parsed, but the instance or mapping is inconsistent."""

    def __init__(self, report: ValidationReport):
        self.report = report
        failures = "; ".join(f"{c.name}: {c.detail}" if c.detail else c.name for c in report.failures())
        super().__init__(f"instance validation failed ({failures})")


def _num(v) -> float:
    if isinstance(v, (int, float)):
        return float(v)
    return float(Fraction(v.strip()))


def load_document(path: str | Path) -> dict:
    """Read and schema-validate a document; SchemaError on any defect."""
    p = Path(path)
    try:
        raw = p.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {p}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{p} is not valid JSON: {exc}") from exc
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = "/".join(str(s) for s in first.absolute_path) or "(root)"
        raise SchemaError(f"{p} violates the document schema at {where}: {first.message}")
    return doc


def _build_set(d: dict) -> SpaceSet:
    kind = d["kind"]
    if kind == "finite":
        return SpaceSet.finite(d["members"])
    if kind == "intervals":
        return SpaceSet.of_intervals([(_num(lo), _num(hi)) for lo, hi in d["intervals"]])
    if kind == "segment":
        (a, b) = d["endpoints"]
        return SpaceSet.of_segment((_num(a[0]), _num(a[1])), (_num(b[0]), _num(b[1])))
    return SpaceSet.of_progression(_num(d["start"]), _num(d["step"]))


def instance_from_document(doc: dict, name: str = "") -> tuple[MetricInstance, MappingSpec]:
    """Convert a schema-valid document into runtime objects (no validation)."""
    space = doc["space"]["kind"]
    matrix = None
    if space == SPACE_MATRIX:
        rows = doc["space"]["distances"]
        matrix = np.array([[_num(v) for v in row] for row in rows], dtype=np.float64)
    points = tuple(
        Point(
            id=p["id"],
            coords=tuple(_num(c) for c in p["coords"]) if "coords" in p else None,
            label=p.get("label", ""),
        )
        for p in doc.get("points", ())
    )
    inst = MetricInstance(
        space=space,
        set_a=_build_set(doc["sets"]["a"]),
        set_b=_build_set(doc["sets"]["b"]),
        points=points,
        matrix=matrix,
        epsilon=_num(doc["epsilon"]) if "epsilon" in doc else 1e-9,
        self_map=doc.get("self_map", False),
        sampled=doc.get("sampled", False),
        name=doc.get("meta", {}).get("name", name),
    )

    m = doc["mapping"]
    if m["kind"] == "table":
        entries = []
        for e in m["entries"]:
            src = inst.element(e["from"])
            to = e["to"]
            if "point" in to:
                img = inst.element(to["point"])
            elif "value" in to:
                img = _num(to["value"])
            else:
                img = (_num(to["coords"][0]), _num(to["coords"][1]))
            entries.append((src, img))
        spec = MappingSpec(kind=MAP_TABLE, table=tuple(entries))
    elif m["kind"] == "piecewise-affine":
        pieces = tuple(
            AffinePiece(
                cond=p["if"],
                bounds=tuple(_num(b) for b in p.get("bounds", ())),
                slope=_num(p["slope"]),
                offset=_num(p["offset"]),
            )
            for p in m["pieces"]
        )
        spec = MappingSpec(kind=MAP_PIECEWISE, pieces=pieces)
    else:
        (r0, r1) = m["matrix"]
        spec = MappingSpec(
            kind=MAP_AFFINE_2D,
            matrix=((_num(r0[0]), _num(r0[1])), (_num(r1[0]), _num(r1[1]))),
            shift=(_num(m["offset"][0]), _num(m["offset"][1])),
        )
    return inst, spec


class LoadedInstance(NamedTuple):
    instance: MetricInstance
    mapping: MappingSpec
    boundary: tuple[BoundaryEntry, ...]
    name: str


def load_instance(
    path: str | Path,
    *,
    epsilon: float | None = None,
    truncate: int | None = None,
    validate: bool = True,
) -> LoadedInstance:
    """Load, convert, (optionally) truncate, and validate an instance file.

    ``epsilon`` and ``truncate`` override the document's own values.  With
    ``validate=True`` any failed structural or mapping check raises
    InstanceValidationError carrying the full report.
    """
    p = Path(path)
    doc = load_document(p)
    inst, spec = instance_from_document(doc, name=p.stem)
    if epsilon is not None:
        if epsilon <= 0:
            raise SchemaError("epsilon must be positive")
        inst = replace(inst, epsilon=epsilon)

    boundary: tuple[BoundaryEntry, ...] = ()
    n_max = truncate if truncate is not None else doc.get("truncation")
    progression_sets = SET_PROGRESSION in (inst.set_a.kind, inst.set_b.kind)
    if n_max is not None:
        if not progression_sets:
            raise SchemaError("truncation applies to progression-generated instances only")
        try:
            inst, spec, boundary = truncate_instance(inst, spec, n_max)
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    elif progression_sets:
        raise SchemaError(
            "progression-generated instances need a truncation (document field or --truncate)"
        )

    if validate:
        report = validate_instance(inst)
        if report.ok:
            mapping_report = validate_mapping(inst, spec)
            report = ValidationReport(report.checks + mapping_report.checks)
        if not report.ok:
            raise InstanceValidationError(report)
    return LoadedInstance(inst, spec, boundary, inst.name or p.stem)
