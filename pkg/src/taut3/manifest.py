"""Manifest loading and validation.

A manifest is a JSON document declaring everything a run needs: the manifold,
solver knobs, foliation data (symbolic 1-form components plus transversal
loops), leafwise and cyclic model parameters.  Validation is strict — unknown
keys are rejected — so a typo fails loudly before any computation starts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

SCHEMA_VERSION = 1

_EXPR = {"type": "string", "minLength": 1}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "manifold"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "manifold": {
            "type": "object",
            "additionalProperties": False,
            "required": ["family"],
            "properties": {
                "family": {"enum": ["S3", "Lens", "Brieskorn", "Torus3"]},
                "params": {"type": "array", "items": {"type": "integer"}, "maxItems": 3},
            },
        },
        "solver": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "tolerance": {"type": "number", "exclusiveMinimum": 0},
                "dedup_tolerance": {"type": "number", "exclusiveMinimum": 0},
                "grid_density": {"type": "integer", "minimum": 2},
                "random_seeds": {"type": "integer", "minimum": 0},
                "max_iterations": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer", "minimum": 0},
            },
        },
        "chern_simons": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "grid": {"type": "integer", "minimum": 4},
                "scale": {"type": "number", "minimum": 0},
                "level": {"type": "number"},
                "step": {"type": "number", "exclusiveMinimum": 0},
                "seed": {"type": "integer", "minimum": 0},
            },
        },
        "foliations": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["omega"],
                "properties": {
                    "label": {"type": "string"},
                    "omega": {"type": "array", "items": _EXPR, "minItems": 3, "maxItems": 3},
                    "grid": {"type": "integer", "minimum": 8},
                    "transversal": {
                        "type": "array",
                        "items": {
                            "type": "array",
                            "items": {"type": "integer", "minimum": 0},
                            "minItems": 3,
                            "maxItems": 3,
                        },
                    },
                },
            },
        },
        "leafwise": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "truncation": {"type": "integer", "minimum": 1},
                "n_z": {"type": "integer", "minimum": 1},
                "weights": {
                    "type": "array",
                    "items": {"type": "number", "exclusiveMinimum": 0},
                    "minItems": 3,
                    "maxItems": 3,
                },
            },
        },
        "cyclic": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "degree_bound": {"type": "integer", "minimum": 1},
                "windings": {"type": "array", "items": {"type": "integer"}},
            },
        },
        "output": {"type": "string"},
    },
}


class ManifestError(ValueError):
    """Manifest failed schema validation or could not be parsed."""


@dataclass(frozen=True)
class Manifest:
    family: str
    params: tuple
    solver: dict = field(default_factory=dict)
    chern_simons: dict = field(default_factory=dict)
    foliations: tuple = ()
    leafwise: dict = field(default_factory=dict)
    cyclic: dict = field(default_factory=dict)
    output: str | None = None
    raw: dict = field(default_factory=dict)


def validate_manifest(data: dict) -> Manifest:
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ManifestError(f"manifest invalid at {path}: {exc.message}") from exc
    man = data["manifold"]
    return Manifest(
        family=man["family"],
        params=tuple(man.get("params", ())),
        solver=dict(data.get("solver", {})),
        chern_simons=dict(data.get("chern_simons", {})),
        foliations=tuple(data.get("foliations", ())),
        leafwise=dict(data.get("leafwise", {})),
        cyclic=dict(data.get("cyclic", {})),
        output=data.get("output"),
        raw=data,
    )


def load_manifest(path) -> Manifest:
    p = Path(path)
    try:
        data = json.loads(p.read_text())
    except FileNotFoundError as exc:
        raise ManifestError(f"manifest not found: {p}") from exc
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ManifestError("manifest root must be a JSON object")
    return validate_manifest(data)
