"""Reference implementations that share no code with the package internals."""
from __future__ import annotations

import itertools
from itertools import combinations, permutations


def simple_cycles_by_edges(vertices, edges):
    """All simple cycles as (vertex set, edge id set); edges are (id, u, v, parity).

    Enumerates edge subsets in which every vertex has degree 0 or 2 and the
    used edges are connected.  Parallel pairs give 2-cycles.
    """
    out = []
    ids = [e[0] for e in edges]
    by_id = {e[0]: e for e in edges}
    for r in range(2, len(ids) + 1):
        for sub in combinations(ids, r):
            deg = {}
            for eid in sub:
                _, u, v, _ = by_id[eid]
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            if any(d != 2 for d in deg.values()):
                continue
            # connected?
            verts = set(deg)
            start = next(iter(verts))
            seen, stack = {start}, [start]
            while stack:
                x = stack.pop()
                for eid in sub:
                    _, u, v, _ = by_id[eid]
                    for a, b in ((u, v), (v, u)):
                        if a == x and b not in seen:
                            seen.add(b)
                            stack.append(b)
            if seen == verts:
                parity = sum(by_id[eid][3] for eid in sub) % 2
                out.append((frozenset(verts), frozenset(sub), parity))
    return out


def ocp_bruteforce(vertices, edges) -> int:
    odd = [vs for vs, _, p in simple_cycles_by_edges(vertices, edges) if p]
    best = 0

    def rec(i, used, count):
        nonlocal best
        best = max(best, count)
        for j in range(i, len(odd)):
            if not (odd[j] & used):
                rec(j + 1, used | odd[j], count + 1)

    rec(0, frozenset(), 0)
    return best


def equivalent_by_all_shifts(vertices, edges1, edges2):
    """Shift set S with edges1 shifted at S equal to edges2, by trying every S."""
    vs = sorted(vertices)
    p2 = {e[0]: e[3] for e in edges2}
    for r in range(len(vs) + 1):
        for S in combinations(vs, r):
            S = set(S)
            if all((p ^ (u in S) ^ (v in S)) == p2[i] for i, u, v, p in edges1):
                return frozenset(S)
    return None


def leibniz_det(M) -> int:
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i in range(n):
            prod *= M[i][perm[i]]
        total += -prod if inv % 2 else prod
    return total


def max_subdet_leibniz(rows) -> int:
    m, n = len(rows), len(rows[0]) if rows else 0
    best = 1
    for k in range(1, min(m, n) + 1):
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                best = max(best, abs(leibniz_det([[rows[i][j] for j in cs] for i in rs])))
    return best


def treewidth_by_permutations(adj) -> int:
    """Minimum over all elimination orders of the largest eliminated degree."""
    verts = sorted(adj)
    if not verts:
        return -1
    best = len(verts) - 1
    for order in permutations(verts):
        work = {v: set(adj[v]) for v in verts}
        w = 0
        for v in order:
            ns = work.pop(v)
            w = max(w, len(ns))
            if w >= best:
                break
            for a in ns:
                work[a].discard(v)
                work[a] |= ns - {a}
        best = min(best, w)
    return best


def ip_enumerate(A_rows, b, w, lower, upper):
    """(value, lexicographically smallest optimal x) or None, by itertools.product."""
    best = None
    for x in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lower, upper))):
        if all(sum(r[j] * x[j] for j in range(len(x))) <= bi for r, bi in zip(A_rows, b)):
            val = sum(wi * xi for wi, xi in zip(w, x))
            if best is None or val > best[0]:
                best = (val, x)
    return best
