"""Conversions between decomposition kinds and structure-preserving rewrites."""
from __future__ import annotations

from collections import deque
from typing import Mapping

from ..sgraph import Edge, RootedSignedGraph
from .types import (
    DecompositionError,
    KFreeDecomposition,
    TameOCPDecomposition,
    TDMDecomposition,
    TreeDecomposition,
    require_valid,
)


def compose_tdm(g: RootedSignedGraph, kfree: KFreeDecomposition,
                leaf_ocp: Mapping[int, TameOCPDecomposition]) -> TDMDecomposition:
    """Glue a K-free decomposition and tame decompositions of its leaves.

    Nodes of the K-free tree form the strong subtree with bag and protector
    ``bag - L``.  The tame decomposition of ``G[bag(j) & L]`` for leaf ``j`` is
    hung off ``j`` (at its smallest node) with ``bag(j) - L`` added to all of
    its bags and protectors.  Leaves whose bag meets L need an entry in
    ``leaf_ocp``.
    """
    require_valid(kfree, g)
    J = kfree.base
    L = kfree.free
    nodes = list(J.nodes)
    edges = list(J.edges)
    bags = {j: J.bags[j] - L for j in J.nodes}
    prot = dict(bags)
    nxt = max(J.nodes) + 1
    for j in sorted(J.leaves()):
        part = J.bags[j] & L
        if not part:
            continue
        if j not in leaf_ocp:
            raise DecompositionError(f"leaf {j} holds free vertices but has no tame decomposition")
        sub = leaf_ocp[j]
        require_valid(sub, g.induced(part))
        shared = J.bags[j] - L
        relabel = {}
        for t in sub.base.nodes:
            relabel[t] = nxt
            nxt += 1
        for t in sub.base.nodes:
            nodes.append(relabel[t])
            bags[relabel[t]] = sub.base.bags[t] | shared
            prot[relabel[t]] = sub.protectors[t] | shared
        edges.extend((relabel[a], relabel[b]) for a, b in sub.base.edges)
        edges.append((j, relabel[min(sub.base.nodes)]))
    return TDMDecomposition(TreeDecomposition(tuple(nodes), tuple(edges), bags), prot, frozenset(J.nodes))


def single_bag_tame(g: RootedSignedGraph) -> TameOCPDecomposition:
    return TameOCPDecomposition(TreeDecomposition.single(g.vertices), {0: frozenset()})


def extract_from_tdm(g: RootedSignedGraph, tdm: TDMDecomposition
                     ) -> tuple[KFreeDecomposition, TameOCPDecomposition]:
    """Split a TDM decomposition into a K-free one and a tame one.

    The tame part is ``(T, bag, protector)`` unchanged.  For the K-free part,
    every inner node j of J that holds unprotected vertices or touches nodes
    outside J gets a new J-leaf copying its bag and protector, which also
    takes over j's neighbours outside J; j keeps only its protector.  Then
    L = V minus all J-protectors, and each J-leaf absorbs the bags of the
    off-J nodes whose nearest J-node it is.
    """
    require_valid(tdm, g)
    tame = tdm.tame()
    td = tdm.base
    J = set(tdm.strong)
    if not J:
        # only possible without roots: one leaf holding everything
        return (KFreeDecomposition(TreeDecomposition.single(g.vertices), g.vertices),
                tame)
    adj = {t: set(ns) for t, ns in td.neighbors().items()}
    bags = dict(td.bags)
    prot = dict(tdm.protectors)
    nxt = max(td.nodes) + 1
    for j in sorted(J):
        j_deg = len(adj[j] & J)
        outside = adj[j] - J
        if j_deg >= 2 and (bags[j] != prot[j] or outside):
            t = nxt
            nxt += 1
            bags[t], prot[t] = bags[j], prot[j]
            adj[t] = {j} | outside
            for s in outside:
                adj[s].discard(j)
                adj[s].add(t)
            adj[j] = (adj[j] - outside) | {t}
            bags[j] = prot[j]
            J.add(t)
    protected = frozenset().union(*(prot[j] for j in J))
    L = g.vertices - protected
    # anchor every off-J node at its nearest J node
    anchor = {j: j for j in J}
    queue = deque(sorted(J))
    while queue:
        t = queue.popleft()
        for s in sorted(adj[t]):
            if s not in anchor:
                anchor[s] = anchor[t]
                queue.append(s)
    new_bags = {j: set(bags[j]) for j in J}
    for t, a in anchor.items():
        if t not in J:
            new_bags[a] |= bags[t]
    j_edges = {(min(a, b), max(a, b)) for a in J for b in adj[a] if b in J}
    kfree = KFreeDecomposition(
        TreeDecomposition(tuple(J), tuple(j_edges), {j: frozenset(b) for j, b in new_bags.items()}),
        L)
    return kfree, tame


def compress_bags(decomp):
    """Contract tree edges t1 t2 with bag(t1) a subset of bag(t2), keeping t2's data.

    Works for tree, tame and TDM decompositions.  For TDM decompositions an
    edge is not contracted when t1 is strong and t2 is not.
    """
    td = decomp.base
    prot = dict(getattr(decomp, "protectors", {}))
    strong = set(getattr(decomp, "strong", ()))
    is_tdm = isinstance(decomp, TDMDecomposition)
    bags = dict(td.bags)
    adj = {t: set(ns) for t, ns in td.neighbors().items()}
    changed = True
    while changed:
        changed = False
        for a, b in sorted((x, y) for x in adj for y in adj[x] if x < y):
            for t1, t2 in ((a, b), (b, a)):
                if not bags[t1] <= bags[t2]:
                    continue
                if is_tdm and t1 in strong and t2 not in strong:
                    continue
                for x in adj[t1] - {t2}:
                    adj[x].discard(t1)
                    adj[x].add(t2)
                    adj[t2].add(x)
                adj[t2].discard(t1)
                del adj[t1], bags[t1]
                prot.pop(t1, None)
                strong.discard(t1)
                changed = True
                break
            if changed:
                break
    edges = {(min(a, b), max(a, b)) for a in adj for b in adj[a]}
    base = TreeDecomposition(tuple(adj), tuple(edges), bags)
    if isinstance(decomp, TreeDecomposition):
        return base
    if isinstance(decomp, TameOCPDecomposition):
        return TameOCPDecomposition(base, prot)
    if is_tdm:
        return TDMDecomposition(base, prot, frozenset(strong))
    raise TypeError(f"cannot compress {type(decomp).__name__}")


def _check_path_map(g: RootedSignedGraph, g_prime: RootedSignedGraph,
                    path_map: Mapping[int, tuple[int, ...]]) -> None:
    interiors = [x for xs in path_map.values() for x in xs]
    if len(set(interiors)) != len(interiors):
        raise DecompositionError("an interior vertex is listed for two paths")
    if set(interiors) & g.vertices:
        raise DecompositionError("interior vertices must not be vertices of the original graph")
    if g_prime.vertices != g.vertices | set(interiors):
        raise DecompositionError("subdivided graph has vertices not explained by the path map")
    for eid, xs in path_map.items():
        if eid not in g.edge_by_id:
            raise DecompositionError(f"path map names unknown edge {eid}")
        e = g.edge_by_id[eid]
        seq = [e.u, *xs, e.v]
        for x in xs:
            if g_prime.degree(x) != 2:
                raise DecompositionError(f"interior vertex {x} has degree {g_prime.degree(x)}")
        for a, b in zip(seq, seq[1:]):
            if b not in g_prime.neighbors(a):
                raise DecompositionError(f"subdivided graph lacks the path step {a}-{b} for edge {eid}")


def uncontract_subdivision(decomp, g: RootedSignedGraph, path_map: Mapping[int, tuple[int, ...]],
                           g_prime: RootedSignedGraph | None = None):
    """Map a decomposition of a subdivision of ``g`` back to ``g``.

    Each interior vertex of the path replacing edge ``uv`` is identified with
    ``min(u, v)`` in every bag and protector.  Node count is unchanged.  For
    TDM decompositions a root that lands in a bag this way joins that bag's
    protector.  For K-free decompositions, a free vertex stays free only if
    it still sits in exactly one bag.
    """
    if g_prime is not None:
        _check_path_map(g, g_prime, path_map)
    rep: dict[int, int] = {}
    for eid, xs in path_map.items():
        e = g.edge_by_id.get(eid)
        if e is None:
            raise DecompositionError(f"path map names unknown edge {eid}")
        for x in xs:
            rep[x] = min(e.u, e.v)
    f = lambda s: frozenset(rep.get(v, v) for v in s)  # noqa: E731
    td = decomp.base
    base = TreeDecomposition(td.nodes, td.edges, {t: f(b) for t, b in td.bags.items()})
    if isinstance(decomp, TreeDecomposition):
        return base
    if isinstance(decomp, TameOCPDecomposition):
        return TameOCPDecomposition(base, {t: f(a) for t, a in decomp.protectors.items()})
    if isinstance(decomp, TDMDecomposition):
        # a root that enters a bag through identification must be protected there
        return TDMDecomposition(base, {t: f(a) | (base.bags[t] & g.roots) for t, a in decomp.protectors.items()},
                                decomp.strong)
    if isinstance(decomp, KFreeDecomposition):
        leaves = base.leaves()
        free = set()
        for v in decomp.free & g.vertices:
            occ = [t for t in base.nodes if v in base.bags[t]]
            if len(occ) == 1 and occ[0] in leaves:
                free.add(v)
        return KFreeDecomposition(base, frozenset(free))
    raise TypeError(f"cannot map {type(decomp).__name__}")


def delete_vertex(decomp, v: int):
    """Remove ``v`` from every bag, protector and free set."""
    td = decomp.base
    base = TreeDecomposition(td.nodes, td.edges, {t: b - {v} for t, b in td.bags.items()})
    if isinstance(decomp, TreeDecomposition):
        return base
    if isinstance(decomp, KFreeDecomposition):
        return KFreeDecomposition(base, decomp.free - {v})
    if isinstance(decomp, TameOCPDecomposition):
        return TameOCPDecomposition(base, {t: a - {v} for t, a in decomp.protectors.items()})
    return TDMDecomposition(base, {t: a - {v} for t, a in decomp.protectors.items()}, decomp.strong)


def suppress_series_vertices(g: RootedSignedGraph, keep: frozenset[int] = frozenset()
                             ) -> tuple[RootedSignedGraph, list[tuple[int, int, int]]]:
    """Repeatedly replace a degree-2 vertex x (not in ``keep``, not a root) by one edge.

    The new edge joins the two distinct neighbours u, v of x and carries the
    parity of the path u x v, so every cycle keeps its parity.  Returns the
    reduced graph and the steps ``(x, u, v)`` in order.
    """
    steps: list[tuple[int, int, int]] = []
    keep = frozenset(keep) | g.roots
    changed = True
    while changed:
        changed = False
        for x in sorted(g.vertices - keep):
            inc = g.incidence[x]
            if len(inc) != 2:
                continue
            e1, e2 = inc
            u, v = e1.other(x), e2.other(x)
            if u == v:
                continue
            merged = Edge(min(e1.id, e2.id), u, v, e1.parity ^ e2.parity)
            edges = tuple(e for e in g.edges if e.id not in (e1.id, e2.id)) + (merged,)
            g = RootedSignedGraph(g.vertices - {x}, edges, g.roots)
            steps.append((x, u, v))
            changed = True
            break
    return g, steps


def lift_series_vertices(decomp, steps: list[tuple[int, int, int]]):
    """Undo ``suppress_series_vertices`` on a decomposition without changing its width.

    Each suppressed x goes into the first bag holding both of its neighbours
    and into no protector; adhesions stay as they were.
    """
    td = decomp.base
    bags = {t: set(b) for t, b in td.bags.items()}
    for x, u, v in reversed(steps):
        t = next(t for t in sorted(bags) if u in bags[t] and v in bags[t])
        bags[t].add(x)
    base = TreeDecomposition(td.nodes, td.edges, bags)
    if isinstance(decomp, TreeDecomposition):
        return base
    if isinstance(decomp, TameOCPDecomposition):
        return TameOCPDecomposition(base, decomp.protectors)
    if isinstance(decomp, TDMDecomposition):
        return TDMDecomposition(base, decomp.protectors, decomp.strong)
    raise TypeError(f"cannot lift {type(decomp).__name__}")
