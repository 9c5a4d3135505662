"""JSON reading and writing for quantum groups and module algebras."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

import jsonschema

from .exact import ShapeError, SparseTensor, format_scalar, to_scalar
from .halgebra import ModuleAlgebra, validate_algebra
from .hopf import FiniteQuantumGroup, ValidationReport, validate

_SCALAR = {"anyOf": [{"type": "integer"},
                     {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}]}
_VECTOR = {"type": "array", "items": _SCALAR}
_INDEX = {"type": "integer", "minimum": 0}
_ENTRIES3 = {"type": "array",
             "items": {"type": "array", "prefixItems": [_INDEX, _INDEX, _INDEX, _SCALAR],
                       "minItems": 4, "maxItems": 4}}

GROUP_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["name", "dim", "basis", "unit", "mult", "comult", "counit", "antipode"],
    "properties": {
        "name": {"type": "string"},
        "dim": {"type": "integer", "minimum": 1},
        "basis": {"type": "array", "items": {"type": "string"}},
        "unit": _VECTOR,
        "mult": _ENTRIES3,
        "comult": _ENTRIES3,
        "counit": _VECTOR,
        "antipode": {"type": "array", "items": _VECTOR},
        "left_integral": _VECTOR,
        "right_integral": _VECTOR,
        "grouplike_candidates": {"type": "array", "items": _VECTOR},
        "character_candidates": {"type": "array", "items": _VECTOR},
        "expected": {"type": "object"},
    },
}

ALGEBRA_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["name", "host_dim", "algebra", "action"],
    "properties": {
        "name": {"type": "string"},
        "host": {"type": "string"},
        "host_dim": {"type": "integer", "minimum": 1},
        "algebra": {
            "type": "object",
            "required": ["dim", "mult"],
            "properties": {
                "dim": {"type": "integer", "minimum": 1},
                "basis": {"type": "array", "items": {"type": "string"}},
                "mult": _ENTRIES3,
                "unit": _VECTOR,
            },
        },
        "action": _ENTRIES3,
        "expected": {"type": "object"},
    },
}


class InputError(ValueError):
    """Malformed input; ``pointer`` locates the offending value as a JSON pointer."""

    def __init__(self, message: str, pointer: str = "", source: str | None = None):
        self.pointer = pointer
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{pointer or '/'}: {message}")


class ValidationFailure(ValueError):
    """Well-formed input that fails an algebraic axiom."""

    def __init__(self, report: ValidationReport):
        self.report = report
        bad = report.failures()[0]
        self.check = bad.name
        self.witness = bad.witness
        super().__init__(f"{report.name}: {bad}")


def _pointer(path) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


def _check_schema(obj, schema, source):
    validator = jsonschema.Draft202012Validator(schema)
    err = jsonschema.exceptions.best_match(validator.iter_errors(obj))
    if err is not None:
        raise InputError(err.message, _pointer(err.absolute_path), source)


def _shape(cond: bool, message: str, pointer: str, source):
    if not cond:
        raise ShapeError(f"{source + ':' if source else ''}{pointer}: {message}")


def _entries(rows, shape, pointer, source) -> SparseTensor:
    for k, row in enumerate(rows):
        for axis, (i, n) in enumerate(zip(row[:3], shape)):
            _shape(i < n, f"index {i} out of range for size {n}", f"{pointer}/{k}/{axis}", source)
    return SparseTensor(shape, {tuple(row[:3]): to_scalar(row[3]) for row in rows})


def _rows(t: SparseTensor) -> list:
    return [[*k, format_scalar(v)] for k, v in sorted(t.entries.items())]


def _vec_json(v: Mapping, n: int) -> list:
    return [format_scalar(v.get(i, 0)) for i in range(n)]


# ---------------------------------------------------------------------------
# quantum groups

def group_to_json(h: FiniteQuantumGroup, expected: Mapping | None = None) -> dict:
    n = h.dim
    out = {
        "name": h.name,
        "dim": n,
        "basis": list(h.basis),
        "unit": _vec_json(h.unit_vec, n),
        "mult": _rows(h.mult),
        "comult": _rows(h.comult),
        "counit": [format_scalar(x) for x in h.counit],
        "antipode": [[format_scalar(x) for x in row] for row in h.antipode],
        "left_integral": _vec_json(h.phi, n),
        "right_integral": _vec_json(h.psi, n),
    }
    if h.grouplike_candidates:
        out["grouplike_candidates"] = [_vec_json(v, n) for v in h.grouplike_candidates]
    if h.character_candidates:
        out["character_candidates"] = [_vec_json(v, n) for v in h.character_candidates]
    if expected:
        out["expected"] = dict(expected)
    return out


def group_from_json(obj, source: str | None = None, check: bool = True) -> FiniteQuantumGroup:
    """Build and (by default) validate a quantum group; integrals are solved when absent."""
    _check_schema(obj, GROUP_SCHEMA, source)
    n = obj["dim"]
    _shape(len(obj["basis"]) == n, f"expected {n} basis names", "/basis", source)
    for key in ("unit", "counit", "left_integral", "right_integral"):
        if key in obj:
            _shape(len(obj[key]) == n, f"expected length {n}", f"/{key}", source)
    _shape(len(obj["antipode"]) == n, f"expected {n} rows", "/antipode", source)
    for i, row in enumerate(obj["antipode"]):
        _shape(len(row) == n, f"expected {n} columns", f"/antipode/{i}", source)
    for key in ("grouplike_candidates", "character_candidates"):
        for i, v in enumerate(obj.get(key, [])):
            _shape(len(v) == n, f"expected length {n}", f"/{key}/{i}", source)
    mult = _entries(obj["mult"], (n, n, n), "/mult", source)
    comult = _entries(obj["comult"], (n, n, n), "/comult", source)
    h = FiniteQuantumGroup(obj["name"], obj["basis"], obj["unit"], mult, comult, obj["counit"],
                           obj["antipode"], left_integral=obj.get("left_integral"),
                           right_integral=obj.get("right_integral"),
                           grouplike_candidates=obj.get("grouplike_candidates"),
                           character_candidates=obj.get("character_candidates"))
    h.expected = dict(obj.get("expected", {}))
    if check:
        rep = validate(h)
        if not rep.ok:
            raise ValidationFailure(rep)
    return h


def _read(path) -> tuple[object, str]:
    path = Path(path)
    try:
        return json.loads(path.read_text()), str(path)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e.msg} at line {e.lineno}", "", str(path)) from e


def load_group(path, check: bool = True) -> FiniteQuantumGroup:
    obj, source = _read(path)
    return group_from_json(obj, source, check)


# ---------------------------------------------------------------------------
# module algebras

def algebra_to_json(A: ModuleAlgebra, host_name: str | None = None, expected: Mapping | None = None) -> dict:
    alg = {"dim": A.dim, "basis": list(A.basis), "mult": _rows(A.mult)}
    if A.unit is not None:
        alg["unit"] = _vec_json(A.unit, A.dim)
    out = {"name": A.name, "host": host_name or A.host.name, "host_dim": A.host.dim,
           "algebra": alg, "action": _rows(A.act_tensor)}
    if expected:
        out["expected"] = dict(expected)
    return out


def algebra_from_json(obj, host: FiniteQuantumGroup, source: str | None = None,
                      check: bool = True) -> ModuleAlgebra:
    _check_schema(obj, ALGEBRA_SCHEMA, source)
    _shape(obj["host_dim"] == host.dim,
           f"algebra is declared over a {obj['host_dim']}-dimensional host, got {host.name} of dimension {host.dim}",
           "/host_dim", source)
    alg = obj["algebra"]
    d = alg["dim"]
    if "basis" in alg:
        _shape(len(alg["basis"]) == d, f"expected {d} basis names", "/algebra/basis", source)
    if "unit" in alg:
        _shape(len(alg["unit"]) == d, f"expected length {d}", "/algebra/unit", source)
    mult = _entries(alg["mult"], (d, d, d), "/algebra/mult", source)
    act = _entries(obj["action"], (host.dim, d, d), "/action", source)
    A = ModuleAlgebra(obj["name"], host, d, mult, act, unit=alg.get("unit"), basis=alg.get("basis"))
    A.expected = dict(obj.get("expected", {}))
    if check:
        rep = validate_algebra(A)
        if not rep.ok:
            raise ValidationFailure(rep)
    return A


def load_algebra(path, group: FiniteQuantumGroup, check: bool = True) -> ModuleAlgebra:
    obj, source = _read(path)
    return algebra_from_json(obj, group, source, check)
