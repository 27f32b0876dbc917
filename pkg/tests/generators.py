"""Seeded random graphs and extensions for the property and acceptance tests."""

import random

from graphext.extension import extension_from_parts, is_essential, is_totally_inessential
from graphext.graph import Graph, build_graph, condition_K, sinks


def raw(g: Graph):
    return list(g.vertices), [tuple(e) for e in g.edges]


def random_graph(rng: random.Random, max_vertices=8, max_edges=20, min_vertices=1, no_sinks=False) -> Graph:
    n = rng.randint(min_vertices, max_vertices)
    verts = [f"x{i}" for i in range(n)]
    m = rng.randint(0, max_edges)
    edges = [(f"e{j}", rng.choice(verts), rng.choice(verts)) for j in range(m)]
    if no_sinks:
        has_out = {s for _, s, _ in edges}
        for v in verts:
            if v not in has_out:
                edges.append((f"e{len(edges)}", v, rng.choice(verts)))
    return build_graph(verts, edges)


def acyclic_graph(rng: random.Random, max_vertices=10, density=0.3) -> Graph:
    n = rng.randint(1, max_vertices)
    verts = [f"x{i}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            for _ in range(rng.choice([1, 1, 1, 2])):
                if rng.random() < density:
                    edges.append((f"e{len(edges)}", verts[i], verts[j]))
    order = verts[:]
    rng.shuffle(order)
    return build_graph(order, edges)


def force_condition_k(g: Graph) -> Graph:
    """Add self-loops at witnesses until Condition (K) holds."""
    verts, edges = raw(g)
    while True:
        res = condition_K(g)
        if res.holds:
            return g
        edges.append((f"k{len(edges)}", res.witness, res.witness))
        g = build_graph(verts, edges)


def random_extension(rng: random.Random, g: Graph, label=None, max_added=3, boundary=None, tag="h"):
    """A random valid 1-sink extension of `g`.

    Added vertices form a DAG ordered h0, h1, ..., sink; every non-sink added
    vertex has an edge to a later one, and every added vertex receives an edge.
    Boundary edges start at base vertices that emit edges in `g`.
    """
    emitters = [v for v in g.vertices if v not in sinks(g)]
    if boundary is not None:
        emitters = [v for v in emitters if v in boundary]
    if not emitters:
        return None
    k = rng.randint(0, max_added)
    inner = [f"{tag}{i}" for i in range(k)]
    sink = f"{tag}sink"
    added = inner + [sink]
    edges = []

    def new(s, d):
        edges.append((f"{tag}e{len(edges)}", s, d))

    for i, u in enumerate(inner):
        new(u, rng.choice(added[i + 1:]))
        for _ in range(rng.randint(0, 1)):
            new(u, rng.choice(added[i + 1:]))
    received = {d for _, _, d in edges}
    for u in added:
        if u not in received:
            new(rng.choice(emitters), u)
    for _ in range(rng.randint(0, 3)):
        new(rng.choice(emitters), rng.choice(added))
    return extension_from_parts(g, added, edges, sink, label)


def essential_extension(rng: random.Random, g: Graph, label=None, tag="h", tries=200):
    if sinks(g):
        return None
    for _ in range(tries):
        ext = random_extension(rng, g, label, tag=tag)
        base_edges = [e for e in ext.added_edges]
        if not is_essential(ext):
            # top up: a boundary edge from every vertex guarantees essentiality
            extra = [(f"{tag}z{i}", v, ext.sink) for i, v in enumerate(g.vertices)
                     if rng.random() < 0.5] or [(f"{tag}z0", g.vertices[0], ext.sink)]
            ext = extension_from_parts(g, ext.added, [tuple(e) for e in base_edges] + extra, ext.sink, label)
        if is_essential(ext):
            return ext
    return None


def totally_inessential_extension(rng: random.Random, g: Graph, label=None, tag="h", tries=200):
    for _ in range(tries):
        ext = random_extension(rng, g, label, tag=tag)
        if ext is not None and is_totally_inessential(ext):
            return ext
    return None
