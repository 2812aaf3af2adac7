"""Typed report records and their JSON encoding.

Complex numbers are written as ``[re, im]`` pairs.  Decoding is driven by
the dataclass type hints, so ``from_json(to_json(r)) == r`` for every report.
"""
from __future__ import annotations

import dataclasses
import json
import typing
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

__all__ = [
    "ResolutionOut",
    "AnsatzOut",
    "AlgebraizationOut",
    "InstanceOut",
    "SolvabilityOut",
    "SolutionOut",
    "RepresentationOut",
    "SolutionReport",
    "ScanRow",
    "encode",
    "decode",
    "to_json",
    "from_json",
]


@dataclass
class ResolutionOut:
    kind: str
    values: List[complex] = field(default_factory=list)
    branches: List[str] = field(default_factory=list)
    reason: Optional[str] = None


@dataclass
class AnsatzOut:
    sigma: complex
    tau: complex
    coefficients: Dict[str, complex]


@dataclass
class AlgebraizationOut:
    algebraizable: bool
    sigma: ResolutionOut
    tau: ResolutionOut
    ansatz: List[AnsatzOut] = field(default_factory=list)


@dataclass
class InstanceOut:
    sigma: complex
    tau: complex
    N: int
    sigma_branch: str
    tau_branch: str
    form: str


@dataclass
class SolvabilityOut:
    mode: str
    instances: List[InstanceOut] = field(default_factory=list)
    free_partner: List[complex] = field(default_factory=list)
    conditions: List[str] = field(default_factory=list)


@dataclass
class SolutionOut:
    sigma: complex
    tau: complex
    N: int
    exponent: complex
    coefficients: List[complex]
    eigenvalue: complex
    native_eigen: complex
    residual_max: float
    truncation_max: float
    verified: bool


@dataclass
class RepresentationOut:
    sigma: complex
    tau: complex
    casimir: complex
    bounded_below: str
    bounded_above: str
    finite_piece: Optional[str] = None


@dataclass
class SolutionReport:
    command: str
    family: str
    params: Dict[str, complex]
    nmax: int
    seed: int
    algebraization: AlgebraizationOut
    solvability: Optional[SolvabilityOut] = None
    solutions: List[SolutionOut] = field(default_factory=list)
    representations: List[RepresentationOut] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


@dataclass
class ScanRow:
    coordinates: Dict[str, float]
    algebraizable: bool
    mode: str
    N: int
    min_abs_eigen: Optional[float] = None


def encode(obj: Any) -> Any:
    """Plain JSON-compatible structure for a report object."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if hasattr(obj, "item"):  # numpy scalar
        return encode(obj.item())
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(tp: Any, data: Any) -> Any:
    """Inverse of :func:`encode` for the annotated type ``tp``."""
    origin = typing.get_origin(tp)
    args = typing.get_args(tp)
    if origin is typing.Union:
        if data is None and type(None) in args:
            return None
        inner = [a for a in args if a is not type(None)]
        return decode(inner[0], data)
    if dataclasses.is_dataclass(tp):
        hints = typing.get_type_hints(tp)
        kwargs = {f.name: decode(hints[f.name], data[f.name])
                  for f in dataclasses.fields(tp) if f.name in data}
        return tp(**kwargs)
    if origin in (list, List):
        return [decode(args[0], v) for v in data]
    if origin in (dict, Dict):
        return {k: decode(args[1], v) for k, v in data.items()}
    if tp is complex:
        if isinstance(data, (list, tuple)):
            return complex(data[0], data[1])
        return complex(data)
    if tp is float:
        return float(data)
    if tp is int:
        return int(data)
    if tp is bool:
        return bool(data)
    return data


def to_json(obj: Any, indent: int = 2) -> str:
    return json.dumps(encode(obj), indent=indent)


def from_json(tp: Any, text: str) -> Any:
    return decode(tp, json.loads(text))
