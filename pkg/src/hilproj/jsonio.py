"""JSON encoding and decoding for the wire formats.

Floats are rendered with 17 significant digits so every IEEE-754 double
round-trips bit-exactly through text; the stdlib dumper cannot customize
float formatting, so serialization is a small recursive renderer. Decoding
failures raise InputError with a one-line reason.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import bochner as bo
from .core import HilbertPoint
from .derivatives import DerivativeResult
from .errors import InputError
from .oracle import OracleEstimate
from .sets import (
    BochnerConstantSubspace,
    BochnerPointwiseCone,
    ClosedBall,
    PositiveCone,
    SubspaceSpan,
)


def _render(obj, pretty: bool, indent: int) -> str:
    pad = "  " * (indent + 1) if pretty else ""
    close_pad = "  " * indent if pretty else ""
    sep = ",\n" if pretty else ","
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError("cannot serialize non-finite float")
        return format(x, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [_render(v, pretty, indent + 1) for v in obj]
        if pretty:
            return "[\n" + sep.join(pad + i for i in items) + "\n" + close_pad + "]"
        return "[" + sep.join(items) + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            json.dumps(str(k)) + (": " if pretty else ":") + _render(v, pretty, indent + 1)
            for k, v in obj.items()
        ]
        if pretty:
            return "{\n" + sep.join(pad + i for i in items) + "\n" + close_pad + "}"
        return "{" + sep.join(items) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, pretty: bool = False) -> str:
    """Serialize to JSON with 17-significant-digit floats."""
    return _render(obj, pretty, 0)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON: {e}") from None


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def encode_point(p: HilbertPoint) -> dict:
    out = {"coeffs": [float(c) for c in p.coeffs]}
    if p.weights is not None:
        out["weights"] = [float(w) for w in p.weights]
    return out


def decode_point(obj) -> HilbertPoint:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise InputError("point must be an object with a \"coeffs\" array")
    coeffs = obj["coeffs"]
    weights = obj.get("weights")
    if not isinstance(coeffs, list) or not all(_is_number(c) for c in coeffs):
        raise InputError("\"coeffs\" must be an array of numbers")
    if weights is not None and (
        not isinstance(weights, list) or not all(_is_number(w) for w in weights)
    ):
        raise InputError("\"weights\" must be an array of numbers")
    try:
        return HilbertPoint(
            np.array(coeffs, dtype=np.float64),
            None if weights is None else np.array(weights, dtype=np.float64),
        )
    except ValueError as e:
        raise InputError(str(e)) from None


def encode_space(space: bo.DiscreteProbabilitySpace) -> dict:
    return {
        "atoms": [
            {"id": a, "weight": float(w)}
            for a, w in zip(space.atom_ids, space.weights)
        ]
    }


def decode_space(obj) -> bo.DiscreteProbabilitySpace:
    if not isinstance(obj, dict) or not isinstance(obj.get("atoms"), list):
        raise InputError("space must be an object with an \"atoms\" array")
    ids, weights = [], []
    for atom in obj["atoms"]:
        if not isinstance(atom, dict) or "id" not in atom or "weight" not in atom:
            raise InputError("each atom needs \"id\" and \"weight\"")
        if not _is_number(atom["weight"]):
            raise InputError("atom weight must be a number")
        ids.append(str(atom["id"]))
        weights.append(float(atom["weight"]))
    try:
        return bo.DiscreteProbabilitySpace(tuple(ids), np.array(weights))
    except ValueError as e:
        raise InputError(str(e)) from None


def encode_function(f: bo.BochnerFunction) -> dict:
    return {
        "space": encode_space(f.space),
        "values": {a: encode_point(v) for a, v in zip(f.space.atom_ids, f.values)},
    }


def decode_function(obj) -> bo.BochnerFunction:
    if not isinstance(obj, dict) or "space" not in obj or "values" not in obj:
        raise InputError("function must be an object with \"space\" and \"values\"")
    space = decode_space(obj["space"])
    values = obj["values"]
    if not isinstance(values, dict):
        raise InputError("\"values\" must map atom ids to points")
    try:
        return bo.BochnerFunction.from_dict(
            space, {str(a): decode_point(v) for a, v in values.items()}
        )
    except ValueError as e:
        raise InputError(str(e)) from None


def encode_set(s) -> dict:
    if isinstance(s, ClosedBall):
        return {"type": "ball", "center": encode_point(s.center), "radius": float(s.radius)}
    if isinstance(s, PositiveCone):
        return {"type": "positive_cone", "dim": s.dim}
    if isinstance(s, SubspaceSpan):
        out = {"type": "subspace", "generators": [encode_point(u) for u in s.generators]}
        if not s.generators:
            out["ambient_dim"] = s.ambient_dim
        return out
    if isinstance(s, BochnerPointwiseCone):
        return {"type": "bochner_cone", "space": encode_space(s.space)}
    if isinstance(s, BochnerConstantSubspace):
        return {"type": "bochner_constants", "space": encode_space(s.space)}
    raise TypeError(f"cannot encode set {type(s).__name__}")


def decode_set(obj):
    if not isinstance(obj, dict) or "type" not in obj:
        raise InputError("set must be an object with a \"type\" tag")
    kind = obj["type"]
    try:
        if kind == "ball":
            if "center" not in obj or "radius" not in obj:
                raise InputError("ball needs \"center\" and \"radius\"")
            if not _is_number(obj["radius"]):
                raise InputError("ball radius must be a number")
            return ClosedBall(decode_point(obj["center"]), float(obj["radius"]))
        if kind == "positive_cone":
            if not isinstance(obj.get("dim"), int) or isinstance(obj.get("dim"), bool):
                raise InputError("positive_cone needs an integer \"dim\"")
            return PositiveCone(obj["dim"])
        if kind == "subspace":
            gens = obj.get("generators")
            if not isinstance(gens, list):
                raise InputError("subspace needs a \"generators\" array")
            ambient = obj.get("ambient_dim")
            if ambient is not None and not isinstance(ambient, int):
                raise InputError("\"ambient_dim\" must be an integer")
            return SubspaceSpan(tuple(decode_point(g) for g in gens), ambient)
        if kind == "bochner_cone":
            return BochnerPointwiseCone(decode_space(obj.get("space")))
        if kind == "bochner_constants":
            return BochnerConstantSubspace(decode_space(obj.get("space")))
    except ValueError as e:
        raise InputError(str(e)) from None
    raise InputError(f"unknown set type {kind!r}")


def encode_value(value) -> dict:
    if isinstance(value, bo.BochnerFunction):
        return encode_function(value)
    return encode_point(value)


def encode_derivative_result(res: DerivativeResult) -> dict:
    out = {"covered": res.covered, "case": res.case_tag}
    if res.value is not None:
        out["value"] = encode_value(res.value)
    return out


def encode_oracle_estimate(est: OracleEstimate) -> dict:
    return {
        "converged": est.converged,
        "residual": float(est.residual),
        "value": None if est.value is None else encode_point(est.value),
        "step_sequence": [
            {"t": float(t), "quotient": encode_point(q)} for t, q in est.step_sequence
        ],
    }
