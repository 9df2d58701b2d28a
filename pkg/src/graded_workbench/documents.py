"""Instance documents: JSON schemas and loading.

A document is ``{"kind": ..., "payload": ..., "seed": ..., "samples": ...}``.
The payload is validated against the schema for its kind before anything is
built, so malformed input is reported with a JSON pointer to the bad node.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import jsonschema

KINDS = ("graded", "skew", "twisted", "crystalline", "dynsys", "gallery")

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*-?\d+\s*(/\s*-?\d+\s*)?$"},
    ]
}

_GROUP = {
    "$id": "group",
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["cyclic", "product", "integers", "table"]},
        "n": {"type": "integer", "minimum": 1},
        "factors": {"type": "array", "minItems": 2, "items": {"$ref": "group"}},
        "table": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": "cyclic"}}}, "then": {"required": ["n"]}},
        {"if": {"properties": {"kind": {"const": "product"}}}, "then": {"required": ["factors"]}},
        {"if": {"properties": {"kind": {"const": "table"}}}, "then": {"required": ["table"]}},
    ],
}

_FINITE_GROUP = {"allOf": [{"$ref": "group"}, {"properties": {"kind": {"not": {"const": "integers"}}}}]}

_GRADED = {
    "type": "object",
    "required": ["group", "components", "unity"],
    "properties": {
        "group": _FINITE_GROUP,
        "components": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "string"}},
        },
        "structure": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["g", "h", "i", "j", "coeffs"],
                "properties": {
                    "i": {"type": "integer", "minimum": 0},
                    "j": {"type": "integer", "minimum": 0},
                    "coeffs": {"type": "array", "items": _RATIONAL},
                },
            },
        },
        "unity": {"type": "array", "items": _RATIONAL},
        "name": {"type": "string"},
    },
}

_PERM = {"type": "array", "items": {"type": "integer", "minimum": 0}}

_SKEW = {
    "type": "object",
    "required": ["group"],
    "properties": {
        "group": _FINITE_GROUP,
        "coefficients": {
            "type": "object",
            "required": ["ring"],
            "properties": {
                "ring": {"enum": ["rationals", "functions"]},
                "points": {"type": "array", "minItems": 1, "items": {"type": "integer"}},
            },
            "if": {"properties": {"ring": {"const": "functions"}}},
            "then": {"required": ["points"]},
        },
        "action": {"type": "array", "items": {"oneOf": [_PERM, {"type": "object", "required": ["perm"], "properties": {"perm": _PERM}}]}},
        "cocycle": {
            "type": "array",
            "items": {"type": "array", "items": {"oneOf": [_RATIONAL, {"type": "array", "items": _RATIONAL}]}},
        },
        "name": {"type": "string"},
    },
}

_TWISTED = {"allOf": [_SKEW, {"required": ["cocycle"]}]}

_CRYSTALLINE = {
    "type": "object",
    "required": ["instance"],
    "properties": {
        "instance": {"enum": ["weyl", "trivial", "functions"]},
        "points": {"type": "integer", "minimum": 1},
        "perm": _PERM,
    },
    "if": {"properties": {"instance": {"const": "functions"}}},
    "then": {"required": ["points", "perm"]},
}

_DYNSYS = {
    "type": "object",
    "required": ["x_size", "h"],
    "properties": {
        "x_size": {"type": "integer", "minimum": 1},
        "h": _PERM,
    },
}

_GALLERY = {
    "type": "object",
    "required": ["name"],
    "properties": {"name": {"type": "string"}, "n": {"type": "integer", "minimum": 2}},
}

PAYLOAD_SCHEMAS = {
    "graded": _GRADED,
    "skew": _SKEW,
    "twisted": _TWISTED,
    "crystalline": _CRYSTALLINE,
    "dynsys": _DYNSYS,
    "gallery": _GALLERY,
}

DOCUMENT_SCHEMA = {
    "type": "object",
    "required": ["kind", "payload"],
    "properties": {
        "kind": {"enum": list(KINDS)},
        "payload": {"type": "object"},
        "seed": {"type": "integer"},
        "samples": {"type": "integer", "minimum": 0},
    },
}

_REGISTRY = None


def _registry():
    global _REGISTRY
    if _REGISTRY is None:
        from referencing import Registry, Resource

        _REGISTRY = Registry().with_resource(
            "group", Resource.from_contents(_GROUP, default_specification=_draft())
        )
    return _REGISTRY


def _draft():
    from referencing.jsonschema import DRAFT202012

    return DRAFT202012


class InputError(ValueError):
    """Malformed instance input; ``path`` is a JSON pointer into the document."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(message)
        self.path = path


@dataclass
class InstanceDocument:
    kind: str
    payload: dict
    seed: int | None = None
    samples: int | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "payload": self.payload}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.samples is not None:
            out["samples"] = self.samples
        return out


def _pointer(parts) -> str:
    return "/" + "/".join(str(p).replace("~", "~0").replace("/", "~1") for p in parts) if parts else "/"


def _check(schema, obj, prefix=()):
    validator = jsonschema.Draft202012Validator(schema, registry=_registry())
    errors = sorted(validator.iter_errors(obj), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        # the deepest error is usually the informative one
        err = max(errors, key=lambda e: len(e.absolute_path))
        raise InputError(err.message, _pointer(list(prefix) + list(err.absolute_path)))


def infer_kind(obj: dict, hint: str | None = None) -> str:
    if "x_size" in obj:
        return "dynsys"
    if "components" in obj:
        return "graded"
    if "instance" in obj:
        return "crystalline"
    if "group" in obj:
        return "twisted" if obj.get("cocycle") is not None else "skew"
    if hint:
        return hint
    raise InputError("cannot tell the instance kind; wrap it as {\"kind\": ..., \"payload\": ...}", "/")


def parse_document(obj, hint: str | None = None) -> InstanceDocument:
    """Accept a full document or a bare payload (kind inferred from its keys)."""
    if not isinstance(obj, dict):
        raise InputError("instance must be a JSON object", "/")
    if "kind" in obj and "payload" in obj:
        _check(DOCUMENT_SCHEMA, obj)
        kind, payload, prefix = obj["kind"], obj["payload"], ("payload",)
    else:
        kind, payload, prefix = infer_kind(obj, hint), obj, ()
    _check(PAYLOAD_SCHEMAS[kind], payload, prefix)
    _semantic(kind, payload, prefix)
    return InstanceDocument(kind, payload, obj.get("seed") if prefix else None, obj.get("samples") if prefix else None)


def _is_perm(p, n) -> bool:
    return sorted(p) == list(range(n))


def _semantic(kind, payload, prefix):
    """Checks JSON Schema cannot express: permutations and matching lengths."""
    where = lambda *parts: _pointer(list(prefix) + list(parts))
    if kind == "dynsys":
        if not _is_perm(payload["h"], payload["x_size"]):
            raise InputError(f"h must be a permutation of 0..{payload['x_size'] - 1}", where("h"))
    elif kind in ("skew", "twisted"):
        coeffs = payload.get("coefficients", {"ring": "rationals"})
        n = len(coeffs["points"]) if coeffs["ring"] == "functions" else 1
        for g, p in enumerate(payload.get("action", [])):
            perm = p["perm"] if isinstance(p, dict) else p
            if not _is_perm(perm, n):
                raise InputError(f"action[{g}] is not a permutation of {n} points", where("action", g))
    elif kind == "crystalline" and payload["instance"] == "functions":
        if not _is_perm(payload["perm"], payload["points"]):
            raise InputError("perm is not a permutation of the points", where("perm"))


def load_document(path: str, hint: str | None = None) -> InstanceDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}", "") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", "") from exc
    return parse_document(obj, hint)
