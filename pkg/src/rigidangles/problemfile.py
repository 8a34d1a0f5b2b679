"""Reading and writing problem files.

A problem file is one JSON document::

    {
      "schema_version": "1",
      "field": "real" | "complex",
      "dim": n,
      "matrices": {"name": [[...], ...], ...},
      "vectors":  {"name": [...], ...},
      "grid": {"points": [[p1, ..., pd], ...], "g1": ["name", ...], "g2": ["name", ...]}
    }

Complex entries are written as ``[re, im]`` pairs; plain numbers are accepted
for either field. ``grid`` is optional and names one matrix per point for
each metric; its point dimension must equal ``dim``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from .core import DEFAULT_TOL, GramForm, ScalarField, Tolerances, validate_gram
from .errors import InputError, SchemaError
from .metricfield import MetricFieldSample, sample_from_arrays

SCHEMA_VERSIONS = ("1",)
FIXTURES = ("standard_r2", "skewed_plane", "scaled_by_2", "complex_c1", "metric_varying", "metric_defect")
FIXTURE_ALIASES = {"example_3_5": "skewed_plane"}


@dataclass
class ProblemFile:
    field: ScalarField
    dim: int
    matrices: dict = dc_field(default_factory=dict)
    vectors: dict = dc_field(default_factory=dict)
    grid: Optional[dict] = None
    schema_version: str = "1"

    def form(self, name: str, tol: Tolerances = DEFAULT_TOL) -> GramForm:
        if name not in self.matrices:
            raise SchemaError(f"matrix {name!r} not found (have: {', '.join(sorted(self.matrices))})")
        try:
            return validate_gram(self.field, self.matrices[name], tol)
        except InputError as exc:
            raise type(exc)(f"matrix {name!r}: {exc}") from exc

    def vector(self, name: str) -> np.ndarray:
        if name not in self.vectors:
            raise SchemaError(f"vector {name!r} not found (have: {', '.join(sorted(self.vectors))})")
        return self.vectors[name]

    def metric_sample(self, tol: Tolerances = DEFAULT_TOL) -> MetricFieldSample:
        if self.grid is None:
            raise SchemaError("file has no 'grid' block")
        if self.field is not ScalarField.REAL:
            raise SchemaError("metric fields must be real")
        g = self.grid
        return sample_from_arrays(g["points"], [self.matrices[k] for k in g["g1"]],
                                  [self.matrices[k] for k in g["g2"]], tol)

    def to_dict(self) -> dict:
        doc = {
            "schema_version": self.schema_version,
            "field": self.field.value,
            "dim": self.dim,
            "matrices": {k: _encode_array(v, self.field) for k, v in self.matrices.items()},
            "vectors": {k: _encode_array(v, self.field) for k, v in self.vectors.items()},
        }
        if self.grid is not None:
            doc["grid"] = {"points": np.asarray(self.grid["points"]).tolist(),
                           "g1": list(self.grid["g1"]), "g2": list(self.grid["g2"])}
        return doc


def _encode_array(a, field: ScalarField):
    a = np.asarray(a)
    if field is ScalarField.REAL:
        return np.real(a).astype(float).tolist()
    return np.stack([a.real, a.imag], axis=-1).astype(float).tolist()


def _decode_scalar(v, field: ScalarField, where: str):
    if isinstance(v, bool):
        raise SchemaError(f"{where}: boolean is not a number")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in v):
        if field is ScalarField.REAL and v[1] != 0:
            raise SchemaError(f"{where}: imaginary part in a real problem")
        return complex(v[0], v[1])
    raise SchemaError(f"{where}: expected a number or [re, im], got {v!r}")


def _decode_array(raw, shape, field: ScalarField, where: str) -> np.ndarray:
    def walk(node, depth, path):
        if depth == len(shape):
            return _decode_scalar(node, field, f"{where}{path}")
        if not isinstance(node, list) or len(node) != shape[depth]:
            raise SchemaError(f"{where}{path}: expected a list of length {shape[depth]}")
        return [walk(c, depth + 1, f"{path}[{i}]") for i, c in enumerate(node)]

    a = np.array(walk(raw, 0, ""), dtype=np.complex128).reshape(shape)
    return a.real.copy() if field is ScalarField.REAL else a


def parse(doc: dict) -> ProblemFile:
    """Validate a decoded JSON document and build a :class:`ProblemFile`."""
    if not isinstance(doc, dict):
        raise SchemaError("problem file must be a JSON object")
    version = str(doc.get("schema_version", ""))
    if version not in SCHEMA_VERSIONS:
        raise SchemaError(f"unrecognised schema_version {version!r}")
    try:
        field = ScalarField(doc.get("field"))
    except ValueError:
        raise SchemaError(f"field must be 'real' or 'complex', got {doc.get('field')!r}") from None
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SchemaError(f"dim must be a positive integer, got {dim!r}")

    matrices = {name: _decode_array(raw, (dim, dim), field, f"matrices.{name}")
                for name, raw in dict(doc.get("matrices", {})).items()}
    vectors = {name: _decode_array(raw, (dim,), field, f"vectors.{name}")
               for name, raw in dict(doc.get("vectors", {})).items()}

    grid = doc.get("grid")
    if grid is not None:
        if not isinstance(grid, dict) or not {"points", "g1", "g2"} <= grid.keys():
            raise SchemaError("grid needs 'points', 'g1' and 'g2'")
        pts = grid["points"]
        if not isinstance(pts, list) or not pts:
            raise SchemaError("grid.points must be a non-empty list")
        points = np.array([_decode_array(p, (dim,), ScalarField.REAL, f"grid.points[{i}]")
                           for i, p in enumerate(pts)])
        for key in ("g1", "g2"):
            names = grid[key]
            if not isinstance(names, list) or len(names) != len(pts):
                raise SchemaError(f"grid.{key} must list one matrix name per point")
            missing = [n for n in names if n not in matrices]
            if missing:
                raise SchemaError(f"grid.{key} refers to unknown matrices: {missing[:5]}")
        grid = {"points": points, "g1": list(grid["g1"]), "g2": list(grid["g2"])}

    return ProblemFile(field, dim, matrices, vectors, grid, version)


def load(path) -> ProblemFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None
    return parse(doc)


def dump(problem: ProblemFile, path) -> None:
    Path(path).write_text(json.dumps(problem.to_dict(), indent=1) + "\n", encoding="utf-8")


def fixture_path(name: str) -> Path:
    name = FIXTURE_ALIASES.get(name, name)
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    return Path(str(resources.files("rigidangles") / "fixtures" / f"{name}.json"))


def load_fixture(name: str) -> ProblemFile:
    return load(fixture_path(name))
