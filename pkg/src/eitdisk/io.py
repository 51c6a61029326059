"""Deterministic JSON / CSV serialization.

All floats are written with 17 significant digits via a fixed recursive
encoder, so identical objects always serialize to identical bytes.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import FormatError, ShapeError
from .fields import CONDUCTIVITY, POTENTIAL, FourierRadialField, RadialProfile
from .forward import BLOCK_NAMES, DtnMatrixSet, index_origins
from .inverse import Reconstruction
from .partial import HalfDiskData

__all__ = [
    "format_float",
    "dumps",
    "load_json",
    "field_to_dict",
    "field_from_dict",
    "dtn_to_dict",
    "dtn_from_dict",
    "reconstruction_to_dict",
    "arc_data_to_dict",
    "arc_data_from_dict",
    "grid_to_csv",
]


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise FormatError(f"cannot serialize non-finite value {x}")
    return format(x, ".17g")


def dumps(obj) -> str:
    """Serialize to compact JSON with fixed float formatting; trailing newline."""
    return _encode(obj) + "\n"


def _encode(obj):
    if isinstance(obj, dict):
        items = ",".join(f"{json.dumps(str(k))}:{_encode(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise FormatError(f"cannot serialize object of type {type(obj).__name__}")


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON in {path}: {exc}") from exc


def field_to_dict(field: FourierRadialField) -> dict:
    def table(profiles):
        return {
            str(k): [[p, float(v)] for p, v in prof.terms]
            for k, prof in profiles.items()
        }

    return {"kind": field.kind, "cos": table(field.cos), "sin": table(field.sin)}


def field_from_dict(doc) -> FourierRadialField:
    if not isinstance(doc, dict):
        raise FormatError("field document must be a JSON object")
    kind = doc.get("kind")
    if kind not in (CONDUCTIVITY, POTENTIAL):
        raise FormatError(f"field kind must be '{CONDUCTIVITY}' or '{POTENTIAL}', got {kind!r}")

    def profiles(name):
        section = doc.get(name, {})
        if not isinstance(section, dict):
            raise FormatError(f"field section {name!r} must be an object")
        out = {}
        for key, terms in section.items():
            try:
                k = int(key)
            except ValueError as exc:
                raise FormatError(f"angular order key {key!r} is not an integer") from exc
            if not isinstance(terms, list) or not all(
                isinstance(t, list) and len(t) == 2 for t in terms
            ):
                raise FormatError(f"profile for {name}[{key}] must be a list of [power, value]")
            try:
                out[k] = RadialProfile((int(p), float(v)) for p, v in terms)
            except (TypeError, ValueError) as exc:
                raise FormatError(f"bad profile term in {name}[{key}]: {exc}") from exc
        return out

    try:
        return FourierRadialField(kind=kind, cos=profiles("cos"), sin=profiles("sin"))
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc


def dtn_to_dict(mset: DtnMatrixSet) -> dict:
    origins = index_origins(mset.kind)
    doc = {
        "kind": mset.kind,
        "N": mset.N,
        "index_origin": {name: list(origins[name]) for name in BLOCK_NAMES},
    }
    for name in BLOCK_NAMES:
        doc[name] = mset.block(name).tolist()
    return doc


def dtn_from_dict(doc) -> DtnMatrixSet:
    if not isinstance(doc, dict):
        raise FormatError("matrix document must be a JSON object")
    kind = doc.get("kind")
    n = doc.get("N")
    if not isinstance(n, int):
        raise FormatError("matrix document needs an integer 'N'")
    blocks = {}
    for name in BLOCK_NAMES:
        if name not in doc:
            raise FormatError(f"matrix document missing block {name!r}")
        try:
            blocks[name] = np.asarray(doc[name], dtype=float)
        except (TypeError, ValueError) as exc:
            raise ShapeError(f"block {name!r} is not a rectangular numeric matrix") from exc
    declared = doc.get("index_origin")
    if declared is not None:
        expected = {k: list(v) for k, v in index_origins(kind).items()}
        if {k: list(v) for k, v in declared.items()} != expected:
            raise ShapeError(f"index_origin {declared!r} does not match kind {kind!r}")
    return DtnMatrixSet(kind, n, blocks["cc"], blocks["ss"], blocks["sc"], blocks["cs"])


def reconstruction_to_dict(rec: Reconstruction) -> dict:
    return {
        "N": rec.N,
        "kind": rec.kind,
        "p": {str(k): [float(c) for c in v] for k, v in rec.p.items()},
        "q": {str(k): [float(c) for c in v] for k, v in rec.q.items()},
        "condition": [float(c) for c in rec.condition.get(0, [])],
    }


def arc_data_to_dict(data: HalfDiskData, alpha: float | None = None) -> dict:
    doc = {}
    if alpha is not None:
        doc["alpha"] = float(alpha)
    doc["N"] = data.N
    doc["data"] = data.values.tolist()
    return doc


def arc_data_from_dict(doc) -> tuple:
    """Returns (HalfDiskData, alpha-or-None)."""
    if not isinstance(doc, dict):
        raise FormatError("data document must be a JSON object")
    if "data" not in doc:
        raise FormatError("data document missing 'data' matrix")
    try:
        data = HalfDiskData(np.asarray(doc["data"], dtype=float))
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"'data' is not a square numeric matrix: {exc}") from exc
    declared_n = doc.get("N")
    if declared_n is not None and declared_n != data.N:
        raise ShapeError(f"declared N={declared_n} does not match data size {data.N}")
    alpha = doc.get("alpha")
    if alpha is not None:
        alpha = float(alpha)
    return data, alpha


def grid_to_csv(rows) -> str:
    rows = np.asarray(rows, dtype=float)
    if rows.ndim != 2 or rows.shape[1] != 3:
        raise FormatError("grid must be an array of (x, y, value) rows")
    lines = ["x,y,value"]
    for x, y, v in rows:
        lines.append(f"{format_float(x)},{format_float(y)},{format_float(v)}")
    return "\n".join(lines) + "\n"
