"""Maximal tails and saturated hereditary vertex sets.

On a finite graph every maximal tail has the form ``T(v) = {w : w >= v}`` for
a vertex ``v`` lying on a loop, which is how `maximal_tails` enumerates them.
`is_maximal_tail` checks the defining axioms directly and serves as the
independent check of that enumeration.
"""

from __future__ import annotations

from typing import Iterable

from graphext.graph import Graph, ancestors, descendants, vertices_on_cycles


def maximal_tails(g: Graph) -> list[frozenset[str]]:
    """All maximal tails of `g`, ordered by their first generating vertex."""
    tails: list[frozenset[str]] = []
    on_cycle = vertices_on_cycles(g)
    for v in g.vertices:
        if v in on_cycle:
            t = frozenset(ancestors(g, [v]))
            if t not in tails:
                tails.append(t)
    return tails


def is_maximal_tail(g: Graph, s: Iterable[str]) -> bool:
    """Check the tail axioms for `s`: nonempty, cofinal, backwards hereditary, no sinks."""
    s = g.check_vertices(s)
    if not s:
        return False
    below = {v: descendants(g, [v]) & s for v in s}
    for v in s:
        for w in s:
            if not below[v] & below[w]:
                return False
    if ancestors(g, s) != s:
        return False
    return all(any(e.dst in s for e in g.out_edges[w]) for w in s)


def is_hereditary(g: Graph, h: Iterable[str]) -> bool:
    h = set(h)
    return all(e.dst in h for e in g.edges if e.src in h)


def is_saturated(g: Graph, h: Iterable[str]) -> bool:
    h = set(h)
    for v in g.vertices:
        out = g.out_edges[v]
        if v not in h and out and all(e.dst in h for e in out):
            return False
    return True


def is_saturated_hereditary(g: Graph, h: Iterable[str]) -> bool:
    h = set(h)
    return is_hereditary(g, h) and is_saturated(g, h)


def saturated_closure(g: Graph, s: Iterable[str]) -> frozenset[str]:
    """Smallest saturated hereditary subset of `g` containing `s`.

    For saturated hereditary ``H1`` and ``H2`` this is the lattice join
    ``H1 v H2`` when called on their union.
    """
    h = set(descendants(g, g.check_vertices(s)))
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            out = g.out_edges[v]
            if v not in h and out and all(e.dst in h for e in out):
                h.add(v)
                changed = True
        if changed:
            h = descendants(g, h)
    return frozenset(h)
