"""1-sink extensions of a fixed base graph and their combinatorial invariants.

An extension ``E`` of ``G`` adds a finite set ``H`` of vertices containing a
single sink ``v0``. The invariants computed here are the Wojciech vector
(paths from each base vertex that step straight into ``H`` and end at
``v0``), the closure of the sink, the inessential part, the path-count vector
on the inessential part, and the quotient and block data used in the general
decision procedure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from graphext.graph import (
    INFINITE,
    Edge,
    Graph,
    GraphError,
    _topological_order,
    ancestors,
    count_paths_to,
    descendants,
    sinks,
    vertex_matrix,
    vertices_on_cycles,
)
from graphext.intlinalg import IntMatrix
from graphext.tails import is_hereditary, is_saturated_hereditary, maximal_tails, saturated_closure


@dataclass(frozen=True)
class Violation:
    """A failed extension condition and a witness for it."""

    axiom: str
    message: str
    witness: object = None

    def as_dict(self) -> dict:
        w = self.witness
        if isinstance(w, (set, frozenset)):
            w = sorted(w)
        elif isinstance(w, tuple):
            w = list(w)
        return {"axiom": self.axiom, "message": self.message, "witness": w}


class InvalidExtension(ValueError):
    def __init__(self, violations: list[Violation], label: Optional[str] = None):
        self.violations = violations
        self.label = label
        head = f"extension {label!r} is invalid" if label else "invalid extension"
        super().__init__(head + ": " + "; ".join(f"[{v.axiom}] {v.message}" for v in violations))


class InvariantError(AssertionError):
    """A property that holds for every valid extension failed; indicates a bug."""


def _find_cycle(g: Graph) -> Optional[tuple[str, ...]]:
    """Edge ids of some cycle in `g`, or None if `g` is acyclic."""
    on_cycle = vertices_on_cycles(g)
    if not on_cycle:
        return None
    start = next(v for v in g.vertices if v in on_cycle)
    # walk inside the strongly connected piece until a vertex repeats
    sub = g.induced(descendants(g, [start]) & ancestors(g, [start]))
    seen: dict[str, int] = {}
    trail: list[Edge] = []
    v = start
    while v not in seen:
        seen[v] = len(trail)
        e = sub.out_edges[v][0]
        trail.append(e)
        v = e.dst
    return tuple(e.id for e in trail[seen[v]:])


def check_extension(base: Graph, total: Graph, sink: str) -> list[Violation]:
    """Every way in which ``(total, sink)`` fails to be a 1-sink extension of `base`."""
    out: list[Violation] = []
    for v in base.vertices:
        if v not in total:
            out.append(Violation("subgraph", f"base vertex {v!r} missing from extension", v))
    for e in base.edges:
        f = total.edge_map.get(e.id)
        if f is None:
            out.append(Violation("subgraph", f"base edge {e.id!r} missing from extension", e.id))
        elif (f.src, f.dst) != (e.src, e.dst):
            out.append(Violation("subgraph", f"edge {e.id!r} has different endpoints in the extension", e.id))
    if out:
        return out
    added = [v for v in total.vertices if v not in base]
    hset = set(added)
    if sink not in total:
        out.append(Violation("sink", f"sink {sink!r} is not a vertex of the extension", sink))
    elif sink in base:
        out.append(Violation("sink", f"sink {sink!r} is a base vertex", sink))

    for v in added:
        if not total.in_edges[v]:
            out.append(Violation("axiom-1", f"added vertex {v!r} is a source", v))
    if sink in hset and total.out_edges[sink]:
        out.append(Violation("axiom-1", f"designated sink {sink!r} emits edges", sink))
    h_sinks = [v for v in added if not total.out_edges[v]]
    if len(h_sinks) != 1:
        out.append(Violation("axiom-1", f"added vertices contain {len(h_sinks)} sinks, need exactly 1", h_sinks))

    loop = _find_cycle(total.induced(added))
    if loop is not None:
        out.append(Violation("axiom-2", "loop whose vertices all lie in the added set", loop))

    base_edges = set(base.edge_map)
    for e in total.edges:
        if e.id not in base_edges and e.dst not in hset:
            out.append(Violation("axiom-3", f"new edge {e.id!r} ends at base vertex {e.dst!r}", e.id))

    for w in sorted(sinks(base), key=base.vertex_index.get):
        if total.out_edges[w]:
            out.append(Violation("axiom-4", f"base sink {w!r} emits edges in the extension", w))
    return out


@dataclass(frozen=True, eq=False)
class OneSinkExtension:
    """A validated 1-sink extension ``(total, sink)`` of `base`.

    Build one with `validate_extension`; the constructor trusts its inputs.
    """

    base: Graph
    total: Graph
    sink: str
    label: Optional[str] = None

    @cached_property
    def added(self) -> tuple[str, ...]:
        return tuple(v for v in self.total.vertices if v not in self.base)

    @cached_property
    def added_edges(self) -> tuple[Edge, ...]:
        base_edges = set(self.base.edge_map)
        return tuple(e for e in self.total.edges if e.id not in base_edges)

    @cached_property
    def _paths_in_added(self) -> dict[str, int]:
        # paths inside the added set to the sink, length-0 counted at the sink
        sub = self.total.induced(self.added)
        ways: dict[str, int] = {}
        for u in _topological_order(sub)[::-1]:
            ways[u] = int(u == self.sink) + sum(ways[w] for w in sub.successors(u))
        return ways

    @cached_property
    def _tails(self) -> list[frozenset[str]]:
        return maximal_tails(self.base)

    @cached_property
    def _reaches_sink(self) -> frozenset[str]:
        return frozenset(ancestors(self.total, [self.sink]))

    def relabel(self, vertex_map: dict[str, str], edge_map: Optional[dict[str, str]] = None) -> "OneSinkExtension":
        return OneSinkExtension(
            self.base.relabel(vertex_map, edge_map),
            self.total.relabel(vertex_map, edge_map),
            vertex_map.get(self.sink, self.sink),
            self.label,
        )


def validate_extension(base: Graph, total: Graph, sink: str, label: Optional[str] = None) -> OneSinkExtension:
    """Return the extension, or raise `InvalidExtension` listing every violation."""
    problems = check_extension(base, total, sink)
    if problems:
        raise InvalidExtension(problems, label)
    return OneSinkExtension(base, total, sink, label)


def extension_from_parts(
    base: Graph,
    added_vertices: Iterable[str],
    added_edges: Iterable[tuple[str, str, str]],
    sink: str,
    label: Optional[str] = None,
) -> OneSinkExtension:
    """Validate the extension obtained by adding vertices and edges to `base`."""
    added_vertices = list(added_vertices)
    clash = [v for v in added_vertices if v in base]
    if clash:
        raise GraphError(f"added vertices {clash} already belong to the base graph")
    total = Graph(base.vertices + tuple(added_vertices), base.edges + tuple(Edge(*t) for t in added_edges))
    return validate_extension(base, total, sink, label)


@dataclass(frozen=True)
class Boundary:
    edges: tuple[str, ...]
    vertices: tuple[str, ...]


def boundary(ext: OneSinkExtension) -> Boundary:
    hset = set(ext.added)
    edges = [e for e in ext.total.edges if e.dst in hset and e.src in ext.base]
    verts = []
    for e in edges:
        if e.src not in verts:
            verts.append(e.src)
    order = ext.base.vertex_index
    return Boundary(tuple(e.id for e in edges), tuple(sorted(verts, key=order.get)))


def wojciech_vector(ext: OneSinkExtension) -> dict[str, int]:
    """Count, for each base vertex, the paths to the sink whose first edge leaves the base."""
    ways = ext._paths_in_added
    hset = set(ext.added)
    omega = {v: 0 for v in ext.base.vertices}
    for e in ext.total.edges:
        if e.src in omega and e.dst in hset:
            omega[e.src] += ways[e.dst]
    return omega


def closure_of_sink(ext: OneSinkExtension) -> frozenset[str]:
    """Union of the maximal tails of the base all of whose vertices reach the sink."""
    reach = ext._reaches_sink
    out: set[str] = set()
    for t in ext._tails:
        if t <= reach:
            out |= t
    return frozenset(out)


def is_essential(ext: OneSinkExtension) -> bool:
    return all(v in ext._reaches_sink for v in ext.base.vertices)


def is_totally_inessential(ext: OneSinkExtension) -> bool:
    return not closure_of_sink(ext)


def inessential_part(ext: OneSinkExtension) -> frozenset[str]:
    closure = closure_of_sink(ext)
    h = frozenset(v for v in ext.base.vertices if v not in closure)
    if not is_saturated_hereditary(ext.base, h):
        raise InvariantError(f"inessential part {sorted(h)} is not saturated hereditary")
    return h


def ordered(g: Graph, vs: Iterable[str]) -> list[str]:
    vs = set(vs)
    return [v for v in g.vertices if v in vs]


def n_vector(ext: OneSinkExtension) -> dict[str, int]:
    """Number of paths in the extension from each inessential vertex to the sink."""
    h = ordered(ext.base, inessential_part(ext))
    counts = count_paths_to(ext.total, ext.sink, h)
    bad = [v for v, c in counts.items() if c == INFINITE]
    if bad:
        raise InvariantError(f"infinitely many paths to the sink from inessential vertices {bad}")
    return {v: int(counts[v]) for v in h}


def quotient_graph(g: Graph, h: Iterable[str]) -> Graph:
    """``G / H``: drop the vertices of `h` and every edge ending in `h`."""
    h = g.check_vertices(h)
    if not is_hereditary(g, h):
        raise GraphError(f"{sorted(h)} is not hereditary")
    return Graph(
        tuple(v for v in g.vertices if v not in h),
        tuple(e for e in g.edges if e.dst not in h),
    )


@dataclass(frozen=True)
class BlockDecomposition:
    """``A_G = [[A_F, X], [0, C]]`` with the closure first and its complement second."""

    closure: tuple[str, ...]
    rest: tuple[str, ...]
    A_F: IntMatrix
    X: IntMatrix
    C: IntMatrix


def block_decomposition(g: Graph, closure: Iterable[str]) -> BlockDecomposition:
    closure = g.check_vertices(closure)
    top = tuple(ordered(g, closure))
    rest = tuple(v for v in g.vertices if v not in closure)
    a = vertex_matrix(g)
    lower_left = a.submatrix(rest, top)
    if any(x for row in lower_left.entries for x in row):
        raise GraphError("complement of the closure is not hereditary: lower-left block is nonzero")
    return BlockDecomposition(top, rest, a.submatrix(top, top), a.submatrix(top, rest), a.submatrix(rest, rest))


def sink_path_space_finite(ext: OneSinkExtension) -> bool:
    """Whether only finitely many paths end at the sink."""
    return not (vertices_on_cycles(ext.total) & ext._reaches_sink)


@dataclass(frozen=True)
class ExtensionAnalysis:
    """Every invariant of one extension, plus the structural self-checks."""

    extension: OneSinkExtension
    boundary: Boundary
    wojciech: dict[str, int]
    closure: tuple[str, ...]
    inessential: tuple[str, ...]
    n: dict[str, int]
    essential: bool
    totally_inessential: bool
    sink_paths_finite: bool
    checks: dict[str, bool] = field(default_factory=dict)


def structural_checks(ext: OneSinkExtension) -> dict[str, bool]:
    """Evaluate the structural facts every valid extension must satisfy."""
    h_e = inessential_part(ext)
    added = frozenset(ext.added)
    total = ext.total
    not_reaching = {v for v in total.vertices if v not in ext._reaches_sink}
    n = n_vector(ext)
    a = vertex_matrix(ext.base)
    closure = closure_of_sink(ext)
    return {
        "inessential_part_saturated_hereditary": is_saturated_hereditary(ext.base, h_e),
        "join_equals_union": saturated_closure(total, not_reaching | added) == h_e | added,
        "n_vector_finite": all(isinstance(x, int) for x in n.values()),
        "no_self_loop_where_n_positive": all(a[v, v] == 0 for v, c in n.items() if c > 0),
        "added_part_acyclic": not (vertices_on_cycles(total) & added),
        "essential_iff_full_closure": is_essential(ext) == (closure == frozenset(ext.base.vertices)) == (not h_e),
        "finite_sink_paths_imply_totally_inessential": (not sink_path_space_finite(ext)) or not closure,
    }


def analyze(ext: OneSinkExtension) -> ExtensionAnalysis:
    checks = structural_checks(ext)
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise InvariantError(f"structural checks failed: {failed}")
    return ExtensionAnalysis(
        extension=ext,
        boundary=boundary(ext),
        wojciech=wojciech_vector(ext),
        closure=tuple(ordered(ext.base, closure_of_sink(ext))),
        inessential=tuple(ordered(ext.base, inessential_part(ext))),
        n=n_vector(ext),
        essential=is_essential(ext),
        totally_inessential=is_totally_inessential(ext),
        sink_paths_finite=sink_path_space_finite(ext),
        checks=checks,
    )
