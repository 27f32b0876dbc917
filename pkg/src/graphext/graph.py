"""Finite directed multigraphs and the combinatorics used by the decision procedures.

Vertices and edges carry string ids. The order in which they are declared is
the order used for every matrix and every enumeration, so results are
reproducible for a given input file.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

from graphext.intlinalg import IntMatrix


class GraphError(ValueError):
    """Raised for malformed graphs or unknown vertex ids."""


class Edge(NamedTuple):
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise GraphError(f"duplicate vertex id {v!r}")
            seen.add(v)
        edge_ids = set()
        for e in self.edges:
            if e.id in edge_ids:
                raise GraphError(f"duplicate edge id {e.id!r}")
            edge_ids.add(e.id)
            for end in (e.src, e.dst):
                if end not in seen:
                    raise GraphError(f"edge {e.id!r} has dangling endpoint {end!r}")

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def out_edges(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict[str, tuple[Edge, ...]]:
        inc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.dst].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def __contains__(self, v) -> bool:
        return v in self.vertex_index

    def successors(self, v: str) -> list[str]:
        return [e.dst for e in self.out_edges[v]]

    def predecessors(self, v: str) -> list[str]:
        return [e.src for e in self.in_edges[v]]

    def check_vertex(self, v: str) -> None:
        if v not in self.vertex_index:
            raise GraphError(f"unknown vertex {v!r}")

    def check_vertices(self, vs: Iterable[str]) -> frozenset[str]:
        vs = frozenset(vs)
        for v in vs:
            self.check_vertex(v)
        return vs

    def induced(self, keep: Iterable[str]) -> "Graph":
        """Subgraph on `keep` with every edge whose endpoints both survive."""
        keep = set(keep)
        return Graph(
            tuple(v for v in self.vertices if v in keep),
            tuple(e for e in self.edges if e.src in keep and e.dst in keep),
        )

    def relabel(self, vertex_map: dict[str, str], edge_map: Optional[dict[str, str]] = None) -> "Graph":
        edge_map = edge_map or {}
        return Graph(
            tuple(vertex_map.get(v, v) for v in self.vertices),
            tuple(
                Edge(edge_map.get(e.id, e.id), vertex_map.get(e.src, e.src), vertex_map.get(e.dst, e.dst))
                for e in self.edges
            ),
        )


def build_graph(vertex_ids: Iterable[str], edge_triples: Iterable[Sequence[str]]) -> Graph:
    """Build a validated graph from vertex ids and ``(edge_id, src, dst)`` triples."""
    return Graph(tuple(vertex_ids), tuple(Edge(*t) for t in edge_triples))


def sinks(g: Graph) -> set[str]:
    return {v for v in g.vertices if not g.out_edges[v]}


def sources(g: Graph) -> set[str]:
    return {v for v in g.vertices if not g.in_edges[v]}


def descendants(g: Graph, starts: Iterable[str]) -> set[str]:
    """Vertices reachable from `starts` by paths of length >= 0."""
    seen = set(starts)
    todo = deque(seen)
    while todo:
        v = todo.popleft()
        for w in g.successors(v):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def ancestors(g: Graph, targets: Iterable[str]) -> set[str]:
    """Vertices that reach some vertex of `targets` (length-0 paths included)."""
    seen = set(targets)
    todo = deque(seen)
    while todo:
        v = todo.popleft()
        for u in g.predecessors(v):
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


def reaches(g: Graph, v: str, w: str) -> bool:
    """True iff there is a path from `v` to `w`; ``reaches(g, v, v)`` is always true."""
    g.check_vertex(v)
    g.check_vertex(w)
    return w in descendants(g, [v])


def strongly_connected_components(g: Graph) -> list[list[str]]:
    """Tarjan's algorithm, iterative. Components come out in reverse topological order."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps: list[list[str]] = []
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(g.successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def vertices_on_cycles(g: Graph) -> set[str]:
    """All vertices lying on some loop, self-loops included."""
    result = set()
    for comp in strongly_connected_components(g):
        if len(comp) > 1:
            result.update(comp)
        else:
            v = comp[0]
            if v in g.successors(v):
                result.add(v)
    return result


@dataclass(frozen=True)
class ConditionResult:
    holds: bool
    witness: object = None


def condition_L(g: Graph) -> ConditionResult:
    """Check that every loop has an exit.

    A loop without an exit can only pass through vertices emitting exactly one
    edge, so it is enough to look for a cycle among those vertices. The witness
    is the loop as a tuple of edge ids.
    """
    single = {v: g.out_edges[v][0] for v in g.vertices if len(g.out_edges[v]) == 1}
    done: set[str] = set()
    for start in g.vertices:
        if start not in single or start in done:
            continue
        trail: dict[str, int] = {}
        path: list[str] = []
        v = start
        while v in single and v not in done and v not in trail:
            trail[v] = len(path)
            path.append(v)
            v = single[v].dst
        if v in trail:
            cycle = path[trail[v]:]
            return ConditionResult(False, tuple(single[u].id for u in cycle))
        done.update(path)
    return ConditionResult(True)


def _count_first_returns(g: Graph, base: str, cap: int = 2) -> int:
    """Number of simple loops based at `base`, saturating at `cap`.

    A simple loop leaves `base`, wanders through ``g`` minus `base`, and comes
    back. If that excursion can touch a cycle avoiding `base`, there are
    infinitely many such loops; otherwise the excursion region is acyclic and
    the loops are counted exactly by path-counting DP.
    """
    rest = g.induced(v for v in g.vertices if v != base)
    starts = [e.dst for e in g.out_edges[base] if e.dst != base]
    back = [e.src for e in g.in_edges[base] if e.src != base]
    direct = sum(1 for e in g.out_edges[base] if e.dst == base)
    if direct >= cap:
        return cap
    region = descendants(rest, starts) & ancestors(rest, back)
    if region & vertices_on_cycles(rest):
        return cap
    sub = rest.induced(region)
    # ways[u] = number of paths from u back to base through the acyclic region
    ways: dict[str, int] = {}
    for u in _topological_order(sub)[::-1]:
        ways[u] = sum(1 for e in g.out_edges[u] if e.dst == base) + sum(ways[w] for w in sub.successors(u))
    total = direct + sum(ways[e.dst] for e in g.out_edges[base] if e.dst in region)
    return min(total, cap)


def _topological_order(g: Graph) -> list[str]:
    indeg = {v: len(g.in_edges[v]) for v in g.vertices}
    queue = deque(v for v in g.vertices if indeg[v] == 0)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in g.successors(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if len(order) != len(g.vertices):
        raise GraphError("graph has a cycle")
    return order


def is_acyclic(g: Graph) -> bool:
    return not vertices_on_cycles(g)


def simple_loop_counts(g: Graph, cap: int = 2) -> dict[str, int]:
    """Per-vertex number of simple loops based there, capped at `cap`."""
    on_cycle = vertices_on_cycles(g)
    return {v: (_count_first_returns(g, v, cap) if v in on_cycle else 0) for v in g.vertices}


def condition_K(g: Graph) -> ConditionResult:
    """Check that no vertex is the base of exactly one simple loop.

    The witness is the first such vertex in declaration order.
    """
    on_cycle = vertices_on_cycles(g)
    for v in g.vertices:
        if v in on_cycle and _count_first_returns(g, v) == 1:
            return ConditionResult(False, v)
    return ConditionResult(True)


def vertex_matrix(g: Graph) -> IntMatrix:
    idx = g.vertex_index
    n = len(g.vertices)
    rows = [[0] * n for _ in range(n)]
    for e in g.edges:
        rows[idx[e.src]][idx[e.dst]] += 1
    return IntMatrix(g.vertices, g.vertices, rows)


def edge_matrix(g: Graph) -> IntMatrix:
    ids = tuple(e.id for e in g.edges)
    rows = [[1 if e.dst == f.src else 0 for f in g.edges] for e in g.edges]
    return IntMatrix(ids, ids, rows)


def source_matrix(g: Graph) -> IntMatrix:
    ids = tuple(e.id for e in g.edges)
    rows = [[1 if e.src == v else 0 for e in g.edges] for v in g.vertices]
    return IntMatrix(g.vertices, ids, rows)


INFINITE = float("inf")


def count_paths(g: Graph, start: str, end: str) -> int | float:
    """Number of paths from `start` to `end`, length-0 path included.

    Returns ``INFINITE`` when some vertex on a cycle lies on a start-to-end path.
    """
    g.check_vertex(start)
    g.check_vertex(end)
    return count_paths_to(g, end, [start])[start]


def count_paths_to(g: Graph, end: str, starts: Iterable[str]) -> dict[str, int | float]:
    """Path counts to `end` from each vertex in `starts` (one shared DP)."""
    starts = list(starts)
    region = descendants(g, starts) & ancestors(g, [end])
    cyclic = vertices_on_cycles(g.induced(region))
    # a start is infinite iff it reaches a cyclic vertex inside the region
    sub = g.induced(region)
    bad = ancestors(sub, cyclic) if cyclic else set()
    clean = sub.induced(region - bad)
    memo: dict[str, int] = {}
    for u in _topological_order(clean)[::-1]:
        memo[u] = (1 if u == end else 0) + sum(memo[w] for w in clean.successors(u))
    out: dict[str, int | float] = {}
    for s in starts:
        if s in bad:
            out[s] = INFINITE
        else:
            out[s] = memo.get(s, 0)
    return out
