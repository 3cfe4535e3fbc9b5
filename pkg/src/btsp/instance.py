"""JSON instance and graph files.

Instance file::

    {"name": "...",                       # optional
     "points": [[x, y], ...], "metric": "euclidean" | "rectilinear",
     # or
     "matrix": [[...], ...],              # null marks a FORBIDDEN entry
     "coloring": "even-odd" | {"blue": [...], "red": [...]}}

Graph file::

    {"k": 3, "edges": [[1, 4], [2, 5], ...]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import (Coloring, DistanceMatrix, PointSet, build_matrix,
                   DEFAULT_TOLERANCE)
from .reduction import BipartiteGraph


class InstanceFormatError(ValueError):
    """The instance or graph file is malformed."""


@dataclass(frozen=True, eq=False)
class Instance:
    matrix: DistanceMatrix
    coloring: Coloring
    points: PointSet | None = None
    metric: str | None = None
    name: str | None = None

    @classmethod
    def from_points(cls, points: PointSet, metric: str, coloring: Coloring | None = None,
                    name: str | None = None) -> Instance:
        C = build_matrix(points, metric)
        return cls(C, coloring or Coloring.even_odd(C.n), points, metric, name)

    @property
    def n(self) -> int:
        return self.matrix.n

    def relabeled(self, perm) -> Instance:
        """Instance whose city u is the old city perm[u-1]."""
        if self.points is not None:
            pts = PointSet(tuple(self.points.points[p - 1] for p in perm))
            return Instance.from_points(pts, self.metric, Coloring.even_odd(len(perm)), self.name)
        return Instance(self.matrix.relabeled(perm), self.coloring, name=self.name)

    def to_dict(self) -> dict:
        out: dict = {}
        if self.name is not None:
            out["name"] = self.name
        if self.points is not None:
            out["points"] = [list(p) for p in self.points.points]
            out["metric"] = self.metric
        else:
            out["matrix"] = self.matrix.to_rows()
        if self.coloring.is_even_odd:
            out["coloring"] = "even-odd"
        else:
            out["coloring"] = {"blue": list(self.coloring.blue), "red": list(self.coloring.red)}
        return out


def parse_instance(data: dict, tol: float = DEFAULT_TOLERANCE) -> Instance:
    if not isinstance(data, dict):
        raise InstanceFormatError("instance must be a JSON object")
    has_pts, has_mat = "points" in data, "matrix" in data
    if has_pts == has_mat:
        raise InstanceFormatError("instance needs exactly one of 'points' or 'matrix'")
    name = data.get("name")
    try:
        if has_pts:
            pts = data["points"]
            if not isinstance(pts, list) or any(not isinstance(p, list) or len(p) != 2 for p in pts):
                raise InstanceFormatError("'points' must be a list of [x, y] pairs")
            points = PointSet(tuple((p[0], p[1]) for p in pts))
            metric = data.get("metric", "euclidean")
            if metric not in ("euclidean", "rectilinear"):
                raise InstanceFormatError(f"unknown metric {metric!r}")
            C = build_matrix(points, metric)
        else:
            points = metric = None
            C = _parse_matrix(data["matrix"], tol)
        coloring = _parse_coloring(data.get("coloring", "even-odd"), C.n)
    except InstanceFormatError:
        raise
    except (TypeError, ValueError) as exc:
        raise InstanceFormatError(str(exc)) from exc
    return Instance(C, coloring, points, metric, name)


def _parse_matrix(rows, tol) -> DistanceMatrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InstanceFormatError("'matrix' must be a list of rows")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InstanceFormatError("'matrix' must be square")
    for a in range(n):
        for b in range(a + 1, n):
            x, y = rows[a][b], rows[b][a]
            if (x is None) != (y is None):
                raise InstanceFormatError(f"matrix not symmetric at ({a + 1}, {b + 1})")
            if x is not None and abs(x - y) > tol:
                raise InstanceFormatError(f"matrix not symmetric at ({a + 1}, {b + 1})")
    # mirror the upper triangle so small asymmetries within tol disappear
    sym = [[rows[min(a, b)][max(a, b)] for b in range(n)] for a in range(n)]
    return DistanceMatrix.from_rows(sym)


def _parse_coloring(value, n: int) -> Coloring:
    if value == "even-odd":
        return Coloring.even_odd(n)
    if isinstance(value, dict) and set(value) == {"blue", "red"}:
        return Coloring(tuple(value["blue"]), tuple(value["red"]))
    raise InstanceFormatError("coloring must be 'even-odd' or {'blue': [...], 'red': [...]}")


def load_instance(path: str | Path) -> Instance:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: invalid JSON ({exc})") from exc
    return parse_instance(data)


def parse_graph(data) -> BipartiteGraph:
    if not isinstance(data, dict) or "k" not in data or "edges" not in data:
        raise InstanceFormatError("graph must be an object with 'k' and 'edges'")
    k = data["k"]
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise InstanceFormatError("'k' must be an integer >= 2")
    edges = data["edges"]
    if not isinstance(edges, list) or any(
            not isinstance(e, list) or len(e) != 2 or not all(isinstance(v, int) for v in e)
            for e in edges):
        raise InstanceFormatError("'edges' must be a list of [i, j] integer pairs")
    try:
        return BipartiteGraph.from_edges(k, [tuple(e) for e in edges])
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from exc


def load_graph(path: str | Path) -> BipartiteGraph:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: invalid JSON ({exc})") from exc
    return parse_graph(data)


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, integers bare, reals with 9 decimals."""
    return _dump(obj)


def _dump(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return f"{float(obj):.9f}"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = sorted(obj.items())
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_dump(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")
