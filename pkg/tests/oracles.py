"""Brute-force reference computations for small graphs.

These only use the raw vertex/edge lists and plain enumeration, never the
library's algorithms, so they can check them independently.
"""

from itertools import combinations


def closure_matrix(vertices, edges):
    """reach[v][w]: path of length >= 0 from v to w (Floyd-Warshall)."""
    reach = {v: {w: v == w for w in vertices} for v in vertices}
    for _, s, d in edges:
        reach[s][d] = True
    for k in vertices:
        for i in vertices:
            if reach[i][k]:
                for j in vertices:
                    if reach[k][j]:
                        reach[i][j] = True
    return reach


def out_edges(vertices, edges):
    out = {v: [] for v in vertices}
    for e in edges:
        out[e[1]].append(e)
    return out


def walk_endpoints(vertices, edges, start, max_len):
    """Endpoints of every walk of length <= max_len from start, by explicit enumeration."""
    out = out_edges(vertices, edges)
    ends = {start}
    stack = [(start, 0)]
    while stack:
        v, k = stack.pop()
        if k == max_len:
            continue
        for _, _, d in out[v]:
            ends.add(d)
            stack.append((d, k + 1))
    return ends


def simple_loop_count(vertices, edges, base, cap=2):
    """Enumerate first-return walks at `base` of length <= 2|V|, counting up to `cap`."""
    out = out_edges(vertices, edges)
    reach = closure_matrix(vertices, edges)
    limit = 2 * len(vertices)
    found = 0
    stack = [(base, 0, True)]
    while stack:
        v, k, at_start = stack.pop()
        if k >= limit:
            continue
        for _, _, d in out[v]:
            if d == base:
                found += 1
                if found >= cap:
                    return cap
            elif reach[d][base]:
                stack.append((d, k + 1, False))
    return found


def condition_k_oracle(vertices, edges):
    return all(simple_loop_count(vertices, edges, v) != 1 for v in vertices)


def simple_cycles(vertices, edges):
    """Every vertex-simple cycle as a list of edges, via DFS from each smallest start."""
    order = {v: i for i, v in enumerate(vertices)}
    out = out_edges(vertices, edges)
    cycles = []
    for start in vertices:
        stack = [(start, [])]
        while stack:
            v, path = stack.pop()
            for e in out[v]:
                d = e[2]
                if d == start:
                    cycles.append(path + [e])
                elif order[d] > order[start] and all(p[2] != d for p in path):
                    stack.append((d, path + [e]))
    return cycles


def condition_l_oracle(vertices, edges):
    out = out_edges(vertices, edges)
    for cyc in simple_cycles(vertices, edges):
        if all(len(out[e[1]]) == 1 for e in cyc):
            return False
    return True


def all_paths(vertices, edges, start, end, max_len):
    """All paths (edge-id tuples) from start to end of length <= max_len."""
    out = out_edges(vertices, edges)
    found = []
    stack = [(start, ())]
    while stack:
        v, path = stack.pop()
        if v == end:
            found.append(path)
        if len(path) == max_len:
            continue
        for eid, _, d in out[v]:
            stack.append((d, path + (eid,)))
    return found


def is_tail_oracle(vertices, edges, subset):
    s = set(subset)
    if not s:
        return False
    reach = closure_matrix(vertices, edges)
    for v in s:
        for w in s:
            if not any(reach[v][u] and reach[w][u] for u in s):
                return False
    for v in vertices:
        if v not in s and any(reach[v][w] for w in s):
            return False
    for w in s:
        if not any(e[2] in s for e in edges if e[1] == w):
            return False
    return True


def all_tails_oracle(vertices, edges):
    tails = set()
    for k in range(1, len(vertices) + 1):
        for combo in combinations(vertices, k):
            if is_tail_oracle(vertices, edges, combo):
                tails.add(frozenset(combo))
    return tails


def wojciech_oracle(base_vertices, total_vertices, total_edges, sink):
    """Count paths from each base vertex whose first edge leaves the base, ending at the sink."""
    base = set(base_vertices)
    out = out_edges(total_vertices, total_edges)
    omega = {}
    for w in base_vertices:
        count = 0
        stack = [e[2] for e in out[w] if e[2] not in base]
        while stack:
            v = stack.pop()
            if v == sink:
                count += 1
            stack.extend(e[2] for e in out[v])
        omega[w] = count
    return omega
