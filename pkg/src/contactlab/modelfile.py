"""JSON model files: finite contact structures or interval ambients.

A finite model::

    {"version": 1,
     "algebra": {"atoms": 3, "labels": ["a", "b", "c"]},
     "contact": {"kind": "atom_graph", "edges": [["a", "b"]]}}

Contact kinds: ``overlap``; ``atom_graph`` with ``edges`` (label pairs);
``full`` with ``pairs`` (pairs of regions, each a list of atom labels)
and optional ``"extends": "overlap"``; ``d_contact`` with ``d`` (a list of
labels); ``product`` with ``left`` and ``right``, each an object holding
its own ``algebra`` and ``contact``.

An interval model::

    {"version": 1, "ambient": "[0,1]+[2,3]",
     "regions": {"x": "(0,1)"}, "nests": {"n": "harmonic:0:1"}}

Asymmetric pair lists are rejected, never repaired.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

import jsonschema

from .algebra import MAX_ATOMS, FiniteAlgebra
from .contact import (
    ContactStructure,
    atom_graph_contact,
    d_contact,
    full_contact,
    overlap_contact,
    product_contact,
)
from .errors import ParseError
from .interval.nest import Nest, parse_nest
from .interval.space import AmbientSpace, IntervalRegion, parse_ambient, parse_region

FORMAT_VERSION = 1

_REGION = {"type": "array", "items": {"type": "string"}}

_FINITE = {
    "type": "object",
    "required": ["algebra", "contact"],
    "properties": {
        "algebra": {
            "type": "object",
            "required": ["atoms"],
            "properties": {
                "atoms": {"type": "integer", "minimum": 1, "maximum": MAX_ATOMS},
                "labels": {"type": "array", "items": {"type": "string", "minLength": 1}, "uniqueItems": True},
            },
            "additionalProperties": False,
        },
        "contact": {"$ref": "#/$defs/contact"},
    },
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version"],
    "properties": {
        "version": {"const": FORMAT_VERSION},
        "algebra": _FINITE["properties"]["algebra"],
        "contact": {"$ref": "#/$defs/contact"},
        "ambient": {"type": "string"},
        "regions": {"type": "object", "additionalProperties": {"type": "string"}},
        "nests": {"type": "object", "additionalProperties": {"type": "string"}},
    },
    "additionalProperties": False,
    "oneOf": [
        {"required": ["algebra", "contact"], "not": {"required": ["ambient"]}},
        {"required": ["ambient"], "not": {"anyOf": [{"required": ["algebra"]}, {"required": ["contact"]}]}},
    ],
    "$defs": {
        "contact": {
            "type": "object",
            "required": ["kind"],
            "oneOf": [
                {"properties": {"kind": {"const": "overlap"}}, "additionalProperties": False},
                {
                    "properties": {
                        "kind": {"const": "atom_graph"},
                        "edges": {"type": "array", "items": {"type": "array", "items": {"type": "string"},
                                                             "minItems": 2, "maxItems": 2}},
                    },
                    "required": ["edges"],
                    "additionalProperties": False,
                },
                {
                    "properties": {
                        "kind": {"const": "full"},
                        "pairs": {"type": "array", "items": {"type": "array", "items": _REGION,
                                                             "minItems": 2, "maxItems": 2}},
                        "extends": {"enum": ["overlap", "none"]},
                    },
                    "required": ["pairs"],
                    "additionalProperties": False,
                },
                {
                    "properties": {"kind": {"const": "d_contact"}, "d": _REGION},
                    "required": ["d"],
                    "additionalProperties": False,
                },
                {
                    "properties": {
                        "kind": {"const": "product"},
                        "left": {"$ref": "#/$defs/finite"},
                        "right": {"$ref": "#/$defs/finite"},
                    },
                    "required": ["left", "right"],
                    "additionalProperties": False,
                },
            ],
        },
        "finite": {**_FINITE, "additionalProperties": False},
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


@dataclass(frozen=True)
class IntervalModel:
    ambient: AmbientSpace
    regions: dict = field(default_factory=dict)
    nests: dict = field(default_factory=dict)


def _schema_error(err: jsonschema.ValidationError) -> ParseError:
    # oneOf failures are vague; report the most specific sub-error
    best = jsonschema.exceptions.best_match([err]) if err.context else err
    where = "/".join(str(p) for p in best.absolute_path) or "<root>"
    return ParseError(f"schema violation at {where}: {best.message}")


def _algebra(spec: dict) -> FiniteAlgebra:
    n = spec["atoms"]
    labels = spec.get("labels")
    if labels is not None and len(labels) != n:
        raise ParseError(f"algebra declares {n} atoms but {len(labels)} labels")
    return FiniteAlgebra(n, tuple(labels) if labels else None)


def _code(alg: FiniteAlgebra, labels: list[str], where: str) -> int:
    code = 0
    for s in labels:
        if s not in alg.labels:
            raise ParseError(f"{where}: unknown atom label {s!r}")
        code |= 1 << alg.labels.index(s)
    return code


def _finite(spec: dict, where: str = "contact") -> ContactStructure:
    alg = _algebra(spec["algebra"])
    c = spec["contact"]
    kind = c["kind"]
    if kind == "overlap":
        return overlap_contact(alg)
    if kind == "atom_graph":
        idx = []
        for i, (s, t) in enumerate(c["edges"]):
            for lab in (s, t):
                if lab not in alg.labels:
                    raise ParseError(f"{where}/edges/{i}: unknown atom label {lab!r}")
            idx.append((alg.labels.index(s), alg.labels.index(t)))
        return atom_graph_contact(alg, idx)
    if kind == "d_contact":
        d = _code(alg, c["d"], f"{where}/d")
        if d == 0:
            raise ParseError(f"{where}/d: the distinguished region must be nonzero")
        return d_contact(alg, d)
    if kind == "full":
        pairs = set()
        for i, (x, y) in enumerate(c["pairs"]):
            xc, yc = _code(alg, x, f"{where}/pairs/{i}"), _code(alg, y, f"{where}/pairs/{i}")
            if xc == 0 or yc == 0:
                raise ParseError(f"{where}/pairs/{i}: a contact pair may not mention the zero region")
            pairs.add((xc, yc))
        missing = sorted((x, y) for x, y in pairs if (y, x) not in pairs)
        if missing:
            x, y = missing[0]
            raise ParseError(
                f"{where}/pairs: not symmetric; {alg.label_of(x)} C {alg.label_of(y)} is listed without "
                f"{alg.label_of(y)} C {alg.label_of(x)}"
            )
        if c.get("extends", "none") == "overlap":
            pairs |= {(x, y) for x in range(1, alg.size) for y in range(1, alg.size) if x & y}
        return full_contact(alg, pairs)
    if kind == "product":
        return product_contact(_finite(c["left"], f"{where}/left"), _finite(c["right"], f"{where}/right"))
    raise AssertionError(kind)  # pragma: no cover - excluded by the schema


def load_model(data: dict) -> ContactStructure | IntervalModel:
    """Validate and build a model from already-decoded JSON."""
    errors = sorted(_VALIDATOR.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        raise _schema_error(errors[0])
    if "ambient" in data:
        amb = parse_ambient(data["ambient"])
        regions = {k: parse_region(amb, v) for k, v in data.get("regions", {}).items()}
        nests = {k: parse_nest(v, amb) for k, v in data.get("nests", {}).items()}
        return IntervalModel(amb, regions, nests)
    return _finite(data)


def loads_model(text: str) -> ContactStructure | IntervalModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return load_model(data)


def read_model(path: str) -> tuple[ContactStructure | IntervalModel, bytes]:
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"model file is not UTF-8: {exc}") from None
    return loads_model(text), raw


def _finite_spec(cs: ContactStructure) -> dict:
    alg = cs.algebra
    algebra = {"atoms": alg.n, "labels": list(alg.labels)}

    def labels(code: int) -> list[str]:
        return [alg.labels[i] for i in range(alg.n) if code >> i & 1]

    if cs.kind == "overlap":
        contact: dict[str, Any] = {"kind": "overlap"}
    elif cs.kind == "atom_graph":
        contact = {"kind": "atom_graph", "edges": [[alg.labels[i], alg.labels[j]] for i, j in cs.params["edges"]]}
    elif cs.kind == "d_contact":
        contact = {"kind": "d_contact", "d": labels(cs.params["d"])}
    elif cs.kind == "product":
        contact = {"kind": "product", "left": _finite_spec(cs.params["left"]), "right": _finite_spec(cs.params["right"])}
    else:
        pairs = sorted(cs.params["pairs"])
        contact = {"kind": "full", "pairs": [[labels(x), labels(y)] for x, y in pairs]}
    return {"algebra": algebra, "contact": contact}


def dump_model(cs: ContactStructure) -> dict:
    """The model-file form of a finite structure (round-trips through :func:`load_model`)."""
    return {"version": FORMAT_VERSION, **_finite_spec(cs)}
