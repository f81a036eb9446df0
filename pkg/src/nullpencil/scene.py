"""Scene files: JSON documents describing one surface-family member.

Schema version 1 (unknown keys are rejected everywhere)::

    {
      "schema_version": 1,
      "name": "ex31a",                       # optional
      "description": "...",                  # optional
      "curve": {
        "components": ["s", "sin(s)", "cos(s)"],
        "domain": [0, "2*pi"],               # numbers or constant expressions
        "frame": {"l": [...], "n": [...], "u": [...]}   # optional; omitted = automatic
      },
      "marching": {"form": "product", "k": "1", "m": "0", "w": "0",
                   "X": "t", "Y": "0", "Z": "0"},
      "t0": 0,
      "t_domain": [-3, 3],
      "grid": {"n_s": 64, "n_t": 32},        # optional
      "samples": 256,                        # optional
      "tolerances": {"null": 1e-9, ...},     # optional overrides
      "output": {"obj": "mesh.obj", "csv": "residuals.csv"}   # optional
    }

Marching forms: ``product`` (k, m, w in s; X, Y, Z in t), ``polynomial``
(adds coefficient lists a1, a2, a3), ``composed`` (polynomial fields plus
f, g, h in w) and ``custom`` (x, y, z in s and t).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import jsonschema

from .config import DEFAULT_SAMPLES, DEFAULT_TOLERANCES, Tolerances
from .curve import AnalyticFrame, NullCurve
from .errors import ExprSyntaxError, SceneError
from .exprlang import eval_expr, parse
from .marching import Composed, Custom, MarchingScale, Polynomial, Product
from .surface import SurfaceFamilyMember

__all__ = ["Scene", "SCENE_SCHEMA", "load_scene", "scene_from_dict", "DEFAULT_GRID"]

DEFAULT_GRID = (64, 32)

_EXPR = {"type": "string", "minLength": 1}
_NUM = {"anyOf": [{"type": "number"}, {"type": "string", "minLength": 1}]}
_VEC = {"type": "array", "items": _EXPR, "minItems": 3, "maxItems": 3}
_RANGE = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}
_COEFFS = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_POS_INT = {"type": "integer", "minimum": 2}
_TOL = {"type": "number", "exclusiveMinimum": 0}

_PRODUCT_KEYS = ["k", "m", "w", "X", "Y", "Z"]
_POLY_KEYS = ["a1", "a2", "a3"] + _PRODUCT_KEYS
_FORM_KEYS = {
    "product": _PRODUCT_KEYS,
    "polynomial": _POLY_KEYS,
    "composed": _POLY_KEYS + ["f", "g", "h"],
    "custom": ["x", "y", "z"],
}


def _form_schema(form: str) -> dict:
    keys = _FORM_KEYS[form]
    props: dict[str, Any] = {"form": {"const": form}}
    for k in keys:
        props[k] = _COEFFS if k in ("a1", "a2", "a3") else _EXPR
    return {
        "if": {"properties": {"form": {"const": form}}},
        "then": {"properties": props, "required": ["form"] + keys, "additionalProperties": False},
    }


SCENE_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "curve", "marching", "t0", "t_domain"],
    "properties": {
        "schema_version": {"const": 1},
        "name": {"type": "string"},
        "description": {"type": "string"},
        "curve": {
            "type": "object",
            "additionalProperties": False,
            "required": ["components", "domain"],
            "properties": {
                "components": _VEC,
                "domain": _RANGE,
                "frame": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["l", "n", "u"],
                    "properties": {"l": _VEC, "n": _VEC, "u": _VEC},
                },
            },
        },
        "marching": {
            "type": "object",
            "required": ["form"],
            "properties": {"form": {"enum": sorted(_FORM_KEYS)}},
            "allOf": [_form_schema(f) for f in sorted(_FORM_KEYS)],
        },
        "t0": _NUM,
        "t_domain": _RANGE,
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "required": ["n_s", "n_t"],
            "properties": {"n_s": _POS_INT, "n_t": _POS_INT},
        },
        "samples": _POS_INT,
        "tolerances": {
            "type": "object",
            "additionalProperties": False,
            "properties": {k: _TOL for k in ("null", "frame", "analytic", "fd", "structural", "k1")},
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"obj": {"type": "string"}, "csv": {"type": "string"}},
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCENE_SCHEMA)


@dataclass(frozen=True)
class Scene:
    curve: NullCurve
    marching: MarchingScale
    name: str = ""
    description: str = ""
    grid: tuple[int, int] = DEFAULT_GRID
    samples: int = DEFAULT_SAMPLES
    tolerances: Tolerances = DEFAULT_TOLERANCES
    output: dict[str, str] = field(default_factory=dict)

    def member(self, grid: tuple[int, int] | None = None) -> SurfaceFamilyMember:
        n_s, n_t = grid or self.grid
        return SurfaceFamilyMember(self.curve, self.marching, n_s, n_t)


def _pointer(parts) -> str:
    return "".join(f"/{str(p).replace('~', '~0').replace('/', '~1')}" for p in parts)


def _expr(text: str, variables, path: str):
    try:
        return parse(text, variables)
    except ExprSyntaxError as exc:
        raise SceneError(str(exc), path) from exc


def _number(value, path: str) -> float:
    if isinstance(value, (int, float)):
        return float(value)
    e = _expr(value, (), path)
    return eval_expr(e)


def scene_from_dict(doc: Any) -> Scene:
    """Validate a decoded JSON document and build the scene."""
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise SceneError(f"schema violation: {err.message}", _pointer(err.absolute_path))

    cdoc = doc["curve"]
    comps = tuple(_expr(x, ("s",), f"/curve/components/{i}") for i, x in enumerate(cdoc["components"]))
    domain = tuple(_number(v, f"/curve/domain/{i}") for i, v in enumerate(cdoc["domain"]))
    if not domain[0] < domain[1]:
        raise SceneError(f"curve domain must satisfy L1 < L2, got {list(domain)}", "/curve/domain")
    frame = None
    if "frame" in cdoc:
        vecs = {
            key: tuple(_expr(x, ("s",), f"/curve/frame/{key}/{i}") for i, x in enumerate(cdoc["frame"][key]))
            for key in ("l", "n", "u")
        }
        frame = AnalyticFrame(vecs["l"], vecs["n"], vecs["u"])
    curve = NullCurve(comps, domain, frame)  # type: ignore[arg-type]

    t_domain = tuple(_number(v, f"/t_domain/{i}") for i, v in enumerate(doc["t_domain"]))
    t0 = _number(doc["t0"], "/t0")
    if not t_domain[0] < t_domain[1]:
        raise SceneError(f"t_domain must satisfy T1 < T2, got {list(t_domain)}", "/t_domain")
    if not t_domain[0] <= t0 <= t_domain[1]:
        raise SceneError(f"t0={t0:g} lies outside t_domain {list(t_domain)}", "/t0")

    marching = MarchingScale(_form(doc["marching"]), t0, t_domain)  # type: ignore[arg-type]

    grid = DEFAULT_GRID
    if "grid" in doc:
        grid = (doc["grid"]["n_s"], doc["grid"]["n_t"])
    try:
        tol = DEFAULT_TOLERANCES.updated(**doc.get("tolerances", {}))
    except KeyError as exc:
        raise SceneError(str(exc), "/tolerances") from exc
    return Scene(
        curve=curve,
        marching=marching,
        name=doc.get("name", ""),
        description=doc.get("description", ""),
        grid=grid,
        samples=doc.get("samples", DEFAULT_SAMPLES),
        tolerances=tol,
        output=dict(doc.get("output", {})),
    )


def _form(mdoc: dict):
    kind = mdoc["form"]

    def ex(key, variables):
        return _expr(mdoc[key], variables, f"/marching/{key}")

    if kind == "custom":
        return Custom(ex("x", ("s", "t")), ex("y", ("s", "t")), ex("z", ("s", "t")))
    factors = [ex(k, ("s",)) for k in ("k", "m", "w")] + [ex(k, ("t",)) for k in ("X", "Y", "Z")]
    if kind == "product":
        return Product(*factors)
    coeffs = [tuple(float(c) for c in mdoc[k]) for k in ("a1", "a2", "a3")]
    if not len(coeffs[0]) == len(coeffs[1]) == len(coeffs[2]):
        raise SceneError("a1, a2 and a3 must have the same length p", "/marching")
    core = Polynomial(*coeffs, *factors)
    if kind == "polynomial":
        return core
    return Composed(core, ex("f", ("w",)), ex("g", ("w",)), ex("h", ("w",)))


def load_scene(path: str | Path) -> Scene:
    """Read, validate and build a scene from a JSON file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from exc
    return scene_from_dict(doc)
