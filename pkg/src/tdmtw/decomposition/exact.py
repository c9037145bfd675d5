"""Exact K-free treewidth for small rooted graphs.

A K-free decomposition with free set L exists at width k iff the graph
``H_L`` has treewidth at most k, where ``H_L`` is ``G - L`` plus a clique on
the neighbourhood of every component of ``G[L]``: each such component goes
into its own leaf bag together with its neighbourhood.  The search runs over
all L inside ``V - K``.
"""
from __future__ import annotations

from itertools import combinations

from ..sgraph import RootedSignedGraph
from .treewidth import decomposition_from_order, degeneracy, greedy_order, order_width, simple_adjacency, _Eliminator
from .types import DecompositionError, KFreeDecomposition, TreeDecomposition

EXACT_KFREE_LIMIT = 18


def _components(adj, keep: frozenset[int]) -> list[frozenset[int]]:
    comps, seen = [], set()
    for s in sorted(keep):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in keep and y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def leaf_reduced_graph(g: RootedSignedGraph, free: frozenset[int]):
    """``(H_L adjacency, [(component, neighbourhood), ...])``."""
    adj = simple_adjacency(g)
    rest = g.vertices - free
    h = {v: {u for u in adj[v] if u in rest} for v in rest}
    parts = []
    for comp in _components(adj, free):
        nb = frozenset(u for x in comp for u in adj[x] if u not in free)
        for a in nb:
            h[a] |= nb - {a}
        parts.append((comp, nb))
    return h, parts


def kfree_from_free_set(g: RootedSignedGraph, free: frozenset[int], order=None) -> KFreeDecomposition:
    """K-free decomposition for a given free set, built from an elimination order of H_L."""
    h, parts = leaf_reduced_graph(g, free)
    if not h:
        return KFreeDecomposition(TreeDecomposition.single(g.vertices), free)
    if order is None:
        order = greedy_order(h)
    td = decomposition_from_order(h, order)
    nodes = list(td.nodes)
    edges = list(td.edges)
    bags = dict(td.bags)
    nxt = max(nodes) + 1
    for comp, nb in parts:
        host = next(t for t in sorted(bags) if nb <= bags[t] and t in td.bags)
        nodes.append(nxt)
        edges.append((host, nxt))
        bags[nxt] = comp | nb
        nxt += 1
    return KFreeDecomposition(TreeDecomposition(tuple(nodes), tuple(edges), bags), free)


def exact_kfree_decomposition(g: RootedSignedGraph) -> KFreeDecomposition:
    """A K-free decomposition of minimum width (roots taken from ``g.roots``)."""
    if len(g.vertices) > EXACT_KFREE_LIMIT:
        raise DecompositionError(
            f"exact K-free treewidth limited to {EXACT_KFREE_LIMIT} vertices, got {len(g.vertices)}")
    candidates = sorted(g.vertices - g.roots)
    scored = []
    best_w, best = None, None
    for r in range(len(candidates) + 1):
        for combo in combinations(candidates, r):
            free = frozenset(combo)
            h, _ = leaf_reduced_graph(g, free)
            if not h:
                lo = hi = -1
                order = []
            else:
                order = greedy_order(h)
                hi = order_width(h, order)
                lo = degeneracy(h)
            if best_w is None or hi < best_w:
                best_w, best = hi, (free, order)
            if lo < hi:
                scored.append((lo, free, h))
    # clamp: any width <= 0 is as good as 0
    for lo, free, h in sorted(scored, key=lambda s: (s[0], sorted(s[1]))):
        if best_w <= max(lo, 0):
            break
        elim = _Eliminator(h)
        for k in range(max(lo, 0), best_w):
            found = elim.decide(k)
            if found is not None:
                best_w, best = k, (free, found)
                break
    free, order = best
    return kfree_from_free_set(g, free, order)


def exact_kfree_tw(g: RootedSignedGraph) -> int:
    """Minimum K-free width over all K-free decompositions, K = ``g.roots``."""
    from .types import width

    return width(exact_kfree_decomposition(g), g)
