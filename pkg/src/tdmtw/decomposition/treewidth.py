"""Elimination orderings: greedy heuristics, exact treewidth for small graphs."""
from __future__ import annotations

import random
from typing import Iterable, Mapping, Sequence

from ..sgraph import RootedSignedGraph
from .types import TreeDecomposition

Adjacency = Mapping[int, set[int]]


def simple_adjacency(g: RootedSignedGraph, keep: Iterable[int] | None = None) -> dict[int, set[int]]:
    keep = g.vertices if keep is None else frozenset(keep)
    adj: dict[int, set[int]] = {v: set() for v in keep}
    for e in g.edges:
        if e.u in keep and e.v in keep:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
    return adj


def greedy_order(adj: Adjacency, strategy: str = "min_fill",
                 rng: random.Random | None = None) -> list[int]:
    """Elimination ordering by min-fill or min-degree; ties broken by id or rng."""
    work = {v: set(ns) for v, ns in adj.items()}
    order = []
    while work:
        best_key, best = None, []
        for v in sorted(work):
            ns = work[v]
            if strategy == "min_degree":
                key = len(ns)
            else:
                key = sum(1 for a in ns for b in ns if a < b and b not in work[a])
            if best_key is None or key < best_key:
                best_key, best = key, [v]
            elif key == best_key:
                best.append(v)
        v = rng.choice(best) if rng is not None else best[0]
        ns = work.pop(v)
        for a in ns:
            work[a].discard(v)
            work[a] |= ns - {a}
        order.append(v)
    return order


def order_width(adj: Adjacency, order: Sequence[int]) -> int:
    work = {v: set(ns) for v, ns in adj.items()}
    w = -1
    for v in order:
        ns = work.pop(v)
        w = max(w, len(ns))
        for a in ns:
            work[a].discard(v)
            work[a] |= ns - {a}
    return w


def decomposition_from_order(adj: Adjacency, order: Sequence[int]) -> TreeDecomposition:
    """Tree decomposition with one bag per eliminated vertex, then compressed.

    The bag of ``v`` is ``v`` plus its neighbours at elimination time and is
    attached to the bag of the first of those neighbours eliminated later.
    Bags without such a neighbour hang off the next bag in the order, so
    disconnected graphs still give a tree.
    """
    if not order:
        return TreeDecomposition.single(())
    pos = {v: i for i, v in enumerate(order)}
    work = {v: set(ns) for v, ns in adj.items()}
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for i, v in enumerate(order):
        ns = work.pop(v)
        bags[i] = frozenset(ns | {v})
        for a in ns:
            work[a].discard(v)
            work[a] |= ns - {a}
        if ns:
            edges.append((i, min(pos[a] for a in ns)))
        elif i + 1 < len(order):
            edges.append((i, i + 1))
    return _absorb_subset_bags(TreeDecomposition(tuple(range(len(order))), tuple(edges), bags))


def _absorb_subset_bags(td: TreeDecomposition) -> TreeDecomposition:
    nodes = set(td.nodes)
    bags = dict(td.bags)
    adj = {t: set(ns) for t, ns in td.neighbors().items()}
    changed = True
    while changed:
        changed = False
        for t in sorted(nodes):
            for s in sorted(adj[t]):
                if bags[t] <= bags[s]:
                    for x in adj[t] - {s}:
                        adj[x].discard(t)
                        adj[x].add(s)
                        adj[s].add(x)
                    adj[s].discard(t)
                    del adj[t], bags[t]
                    nodes.discard(t)
                    changed = True
                    break
            if changed:
                break
    edges = {(min(a, b), max(a, b)) for a in adj for b in adj[a]}
    return TreeDecomposition(tuple(nodes), tuple(edges), bags)


# ---------------------------------------------------------------- exact treewidth

class _Eliminator:
    """Decides treewidth <= k by search over eliminated vertex sets."""

    def __init__(self, adj: Adjacency):
        self.verts = sorted(adj)
        self.idx = {v: i for i, v in enumerate(self.verts)}
        self.nbr = [0] * len(self.verts)
        for v, ns in adj.items():
            for u in ns:
                self.nbr[self.idx[v]] |= 1 << self.idx[u]
        self.full = (1 << len(self.verts)) - 1

    def q(self, eliminated: int, i: int) -> int:
        """Neighbours of i in the elimination graph after removing ``eliminated``."""
        seen = 1 << i
        frontier = self.nbr[i]
        out = 0
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            if seen & low:
                continue
            seen |= low
            if eliminated & low:
                frontier |= self.nbr[low.bit_length() - 1] & ~seen
            else:
                out |= low
        return out

    def decide(self, k: int) -> list[int] | None:
        failed: set[int] = set()

        def rec(elim: int) -> list[int] | None:
            rest = self.full & ~elim
            if bin(rest).count("1") <= k + 1:
                return [i for i in range(len(self.verts)) if rest >> i & 1]
            if elim in failed:
                return None
            cands = []
            for i in range(len(self.verts)):
                if rest >> i & 1:
                    qi = self.q(elim, i)
                    if bin(qi).count("1") <= k:
                        cands.append((i, qi))
            for i, qi in cands:
                if self._is_clique(elim, qi):
                    cands = [(i, qi)]
                    break
            for i, _ in cands:
                sub = rec(elim | 1 << i)
                if sub is not None:
                    return [i] + sub
            failed.add(elim)
            return None

        res = rec(0)
        return None if res is None else [self.verts[i] for i in res]

    def _is_clique(self, elim: int, members: int) -> bool:
        m = members
        while m:
            low = m & -m
            m ^= low
            i = low.bit_length() - 1
            others = members & ~low
            if self.q(elim, i) & others != others:
                return False
        return True


def degeneracy(adj: Adjacency) -> int:
    """Max over subgraphs of the minimum degree; a treewidth lower bound."""
    work = {v: set(ns) for v, ns in adj.items()}
    best = 0
    while work:
        v = min(work, key=lambda x: (len(work[x]), x))
        best = max(best, len(work[v]))
        for a in work.pop(v):
            work[a].discard(v)
    return best


def treewidth_at_most(adj: Adjacency, k: int) -> list[int] | None:
    """An elimination ordering of width <= k, or None if none exists."""
    if k < 0:
        return [] if not adj else None
    return _Eliminator(adj).decide(k)


def treewidth_exact(adj: Adjacency, upper: int | None = None) -> tuple[int, list[int]]:
    """(treewidth, optimal ordering); -1 for the empty graph.

    With ``upper`` given, stops early and returns ``(upper, [])`` when the
    treewidth is at least ``upper``.
    """
    if not adj:
        return -1, []
    heur = greedy_order(adj)
    ub = order_width(adj, heur)
    lo = degeneracy(adj)
    if upper is not None and lo >= upper:
        return upper, []
    best, best_order = ub, heur
    limit = ub if upper is None else min(ub, upper)
    elim = _Eliminator(adj)
    for k in range(lo, limit):
        found = elim.decide(k)
        if found is not None:
            return k, found
    if upper is not None and ub >= upper:
        return upper, []
    return best, best_order
