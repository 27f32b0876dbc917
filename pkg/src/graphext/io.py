"""Problem files, matrix files, and JSON encoding of results.

A problem file holds one base graph and any number of extensions::

    {"base": {"vertices": ["w1", ...],
              "edges": [{"id": "e1", "src": "w1", "dst": "w2"}, ...]},
     "extensions": [{"label": "E1", "added_vertices": ["v0", ...],
                     "added_edges": [{"id": "b1", "src": "w1", "dst": "v0"}, ...],
                     "sink": "v0"}, ...]}

Matrix files are ``{"rows": [...], "cols": [...], "entries": [[...], ...]}``
with entries written as decimal strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

from graphext.extension import OneSinkExtension, Violation, check_extension, InvalidExtension
from graphext.graph import Edge, Graph, GraphError
from graphext.intlinalg import IntMatrix

MAX_SAFE_INT = 2**53 - 1


class ProblemError(ValueError):
    """Malformed input, with the location of the problem when known."""

    def __init__(self, message: str, where: Optional[str] = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


@dataclass(frozen=True)
class ExtensionSpec:
    label: str
    added_vertices: tuple[str, ...]
    added_edges: tuple[Edge, ...]
    sink: str
    total: Graph


@dataclass(frozen=True)
class Problem:
    base: Graph
    extensions: tuple[OneSinkExtension, ...]

    def find(self, key: Union[int, str]) -> OneSinkExtension:
        """Look an extension up by 1-based position or by label."""
        if isinstance(key, str) and not key.isdigit():
            for e in self.extensions:
                if e.label == key:
                    return e
            raise ProblemError(f"no extension labelled {key!r}")
        i = int(key)
        if not 1 <= i <= len(self.extensions):
            raise ProblemError(f"extension index {i} out of range 1..{len(self.extensions)}")
        return self.extensions[i - 1]


def _require(obj: Any, key: str, kind: type, where: str):
    if not isinstance(obj, dict):
        raise ProblemError("expected an object", where)
    if key not in obj:
        raise ProblemError(f"missing field {key!r}", where)
    val = obj[key]
    if not isinstance(val, kind):
        raise ProblemError(f"expected {kind.__name__}", f"{where}.{key}")
    return val


def _edges(items: list, where: str) -> list[Edge]:
    out = []
    for i, item in enumerate(items):
        at = f"{where}[{i}]"
        out.append(Edge(*(_require(item, k, str, at) for k in ("id", "src", "dst"))))
    return out


def _strings(items: list, where: str) -> list[str]:
    for i, v in enumerate(items):
        if not isinstance(v, str):
            raise ProblemError("expected a string id", f"{where}[{i}]")
    return list(items)


def read_problem_dict(data: Any) -> tuple[Graph, list[ExtensionSpec]]:
    """Schema-check a problem and build the graphs, without the extension axioms."""
    base_obj = _require(data, "base", dict, "$")
    vertices = _strings(_require(base_obj, "vertices", list, "base"), "base.vertices")
    edges = _edges(_require(base_obj, "edges", list, "base"), "base.edges")
    try:
        base = Graph(tuple(vertices), tuple(edges))
    except GraphError as exc:
        raise ProblemError(str(exc), "base") from None
    exts = data.get("extensions", [])
    if not isinstance(exts, list):
        raise ProblemError("expected list", "extensions")
    specs = []
    for i, ext in enumerate(exts):
        at = f"extensions[{i}]"
        label = ext.get("label", f"E{i + 1}") if isinstance(ext, dict) else None
        if not isinstance(label, str):
            raise ProblemError("expected string", f"{at}.label")
        added = _strings(_require(ext, "added_vertices", list, at), f"{at}.added_vertices")
        added_edges = _edges(_require(ext, "added_edges", list, at), f"{at}.added_edges")
        sink = _require(ext, "sink", str, at)
        for j, v in enumerate(added):
            if v in base:
                raise ProblemError(f"added vertex {v!r} is already a base vertex", f"{at}.added_vertices[{j}]")
        if sink in base:
            raise ProblemError(f"sink {sink!r} is a base vertex", f"{at}.sink")
        if sink not in added:
            raise ProblemError(f"sink {sink!r} is not among the added vertices", f"{at}.sink")
        try:
            total = Graph(base.vertices + tuple(added), base.edges + tuple(added_edges))
        except GraphError as exc:
            raise ProblemError(str(exc), at) from None
        specs.append(ExtensionSpec(label, tuple(added), tuple(added_edges), sink, total))
    labels = [s.label for s in specs]
    if len(set(labels)) != len(labels):
        raise ProblemError("extension labels must be distinct", "extensions")
    return base, specs


def _load_json(path: Union[str, Path]) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from None


def check_problem(path: Union[str, Path]) -> tuple[Graph, list[tuple[ExtensionSpec, list[Violation]]]]:
    """Read a problem and report axiom violations per extension instead of raising."""
    base, specs = read_problem_dict(_load_json(path))
    return base, [(s, check_extension(base, s.total, s.sink)) for s in specs]


def problem_from_dict(data: Any) -> Problem:
    base, specs = read_problem_dict(data)
    exts = []
    for s in specs:
        problems = check_extension(base, s.total, s.sink)
        if problems:
            raise InvalidExtension(problems, s.label)
        exts.append(OneSinkExtension(base, s.total, s.sink, s.label))
    return Problem(base, tuple(exts))


def parse_problem(path: Union[str, Path]) -> Problem:
    """Load and fully validate a problem file.

    Raises `ProblemError` for JSON or schema errors and `InvalidExtension` when
    an extension breaks one of the extension axioms.
    """
    return problem_from_dict(_load_json(path))


def graph_to_dict(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in g.edges]}


def problem_to_dict(problem: Problem) -> dict:
    exts = []
    for e in problem.extensions:
        exts.append({
            "label": e.label,
            "added_vertices": list(e.added),
            "added_edges": [{"id": x.id, "src": x.src, "dst": x.dst} for x in e.added_edges],
            "sink": e.sink,
        })
    return {"base": graph_to_dict(problem.base), "extensions": exts}


def dump_problem(problem: Problem, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(problem_to_dict(problem), indent=2) + "\n", encoding="utf-8")


def matrix_to_dict(m: IntMatrix) -> dict:
    """Entries are numbers, or decimal strings throughout if any one is too large for a double."""
    big = any(abs(x) > MAX_SAFE_INT for r in m.entries for x in r)
    entries = [[str(x) if big else x for x in r] for r in m.entries]
    return {"rows": list(m.rows), "cols": list(m.cols), "entries": entries}


def matrix_from_dict(data: Any, where: str = "$") -> IntMatrix:
    entries = _require(data, "entries", list, where)
    rows = data.get("rows")
    cols = data.get("cols")
    parsed = []
    for i, r in enumerate(entries):
        if not isinstance(r, list):
            raise ProblemError("expected list", f"{where}.entries[{i}]")
        row = []
        for j, x in enumerate(r):
            if isinstance(x, bool) or not isinstance(x, (int, str)):
                raise ProblemError("expected an integer or decimal string", f"{where}.entries[{i}][{j}]")
            try:
                row.append(int(x))
            except ValueError:
                raise ProblemError(f"not an integer: {x!r}", f"{where}.entries[{i}][{j}]") from None
        parsed.append(row)
    ncols = len(parsed[0]) if parsed else (len(cols) if cols else 0)
    rows = rows if rows is not None else [str(i) for i in range(len(parsed))]
    cols = cols if cols is not None else [str(j) for j in range(ncols)]
    try:
        return IntMatrix(rows, cols, parsed)
    except ValueError as exc:
        raise ProblemError(str(exc), where) from None


def load_matrix(path: Union[str, Path]) -> IntMatrix:
    return matrix_from_dict(_load_json(path))


def jsonable(obj: Any) -> Any:
    """Convert results to JSON-ready values; integers beyond 2**53 - 1 become strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > MAX_SAFE_INT else obj
    if isinstance(obj, float):
        return "infinite" if obj == float("inf") else obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(x) for x in obj)
    if isinstance(obj, IntMatrix):
        return matrix_to_dict(obj)
    if hasattr(obj, "__dataclass_fields__"):
        return {k: jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}
    return str(obj)
