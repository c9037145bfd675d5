"""Best-effort decomposers.

Nothing here promises a width bound; every returned decomposition is valid,
and widths are always recomputed exactly by the callers that report them.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from itertools import islice

from ..sgraph import RootedSignedGraph, is_balanced
from .transform import (
    compose_tdm,
    compress_bags,
    extract_from_tdm,
    lift_series_vertices,
    suppress_series_vertices,
)
from .treewidth import decomposition_from_order, greedy_order, simple_adjacency
from .types import (
    KFreeDecomposition,
    TameOCPDecomposition,
    TDMDecomposition,
    TreeDecomposition,
    bag_score,
    require_valid,
    width,
)

log = logging.getLogger(__name__)

SINGLE_BAG_LIMIT = 16
PROTECTOR_CANDIDATES = 64


@dataclass(frozen=True)
class HeuristicResult:
    decomposition: object
    width: int
    budget_exhausted: bool


def tree_decompositions(g: RootedSignedGraph, budget: int, seed: int = 0):
    """Yield up to ``budget`` distinct tree decompositions from greedy orders."""
    adj = simple_adjacency(g)
    rng = random.Random(seed)
    seen = set()
    strategies = ["min_fill", "min_degree"]
    for i in range(budget):
        if i < len(strategies):
            order = greedy_order(adj, strategies[i])
        else:
            order = greedy_order(adj, strategies[i % 2], rng)
        key = tuple(order)
        if key in seen:
            continue
        seen.add(key)
        yield decomposition_from_order(adj, order)


def _maximal_packings(universe: list[int], adhesions: list[frozenset[int]]):
    """Maximal X within ``universe`` meeting every adhesion in at most one vertex."""

    def rec(i: int, chosen: frozenset[int]):
        if i == len(universe):
            # maximality: no skipped vertex could be added
            for v in universe:
                if v not in chosen and all(len((a & chosen)) == 0 for a in adhesions if v in a):
                    return
            yield chosen
            return
        v = universe[i]
        if all(not (a & chosen) for a in adhesions if v in a):
            yield from rec(i + 1, chosen | {v})
        yield from rec(i + 1, chosen)

    yield from rec(0, frozenset())


def choose_protectors(g: RootedSignedGraph, td: TreeDecomposition,
                      strong: frozenset[int] = frozenset(),
                      roots: frozenset[int] = frozenset()) -> dict[int, frozenset[int]]:
    """Per node: the cheapest protector by ``|prot| + OCP(bag - prot)``.

    A protector holds the roots of its bag, every adhesion vertex when the
    node is strong, and otherwise all but at most one vertex of each
    adhesion.  Leaving a vertex unprotected never raises the score, so only
    maximal sets of unprotected adhesion vertices are tried.
    """
    adj = td.neighbors()
    cache: dict = {}
    out = {}
    for t in td.nodes:
        bag = td.bags[t]
        adhs = [td.adhesion(t, s) for s in adj[t]]
        must = (bag & roots)
        if t in strong:
            must = must.union(*adhs)
        universe = sorted(frozenset().union(*adhs) - must) if adhs else []
        live = [a - must for a in adhs]
        best = None
        for X in islice(_maximal_packings(universe, live), PROTECTOR_CANDIDATES):
            prot = must | (frozenset(universe) - X)
            score = bag_score(g, bag, prot, cache)
            if best is None or score < best[0]:
                best = (score, prot)
        out[t] = best[1] if best else must
    return out


def steiner_strong_subtree(td: TreeDecomposition, roots: frozenset[int]) -> frozenset[int]:
    """A small subtree whose bags cover ``roots`` (empty when there are none)."""
    if not roots:
        return frozenset()
    holders = {t for t in td.nodes if td.bags[t] & roots}
    start = min(holders)
    parent, order = td.rooted(start)
    J = set()
    for t in holders:
        while t is not None and t not in J:
            J.add(t)
            t = parent[t]
    adj = td.neighbors()
    # peel J-leaves whose roots are covered elsewhere in J
    changed = True
    while changed and len(J) > 1:
        changed = False
        for t in sorted(J):
            if len([s for s in adj[t] if s in J]) != 1:
                continue
            rest = frozenset().union(*(td.bags[s] for s in J if s != t))
            if (td.bags[t] & roots) <= rest:
                J.discard(t)
                changed = True
                break
    return frozenset(J)


def tame_heuristic(g: RootedSignedGraph, budget: int = 4, seed: int = 0) -> TameOCPDecomposition:
    """Elimination-order decompositions with greedy protectors, on the series-reduced graph.

    Suppressing a degree-2 vertex and putting it back next to its neighbours
    leaves the width unchanged, so the result does not depend on how finely
    edges are subdivided.
    """
    red, steps = suppress_series_vertices(g)
    return lift_series_vertices(_tame_core(red, budget, seed), steps)


def _tame_core(g: RootedSignedGraph, budget: int, seed: int) -> TameOCPDecomposition:
    best = None
    if len(g.vertices) <= SINGLE_BAG_LIMIT:
        cand = TameOCPDecomposition(TreeDecomposition.single(g.vertices), {0: frozenset()})
        best = (width(cand, g), cand)
    for td in tree_decompositions(g, max(budget, 1), seed):
        cand = TameOCPDecomposition(td, choose_protectors(g, td))
        w = width(cand, g)
        if best is None or w < best[0]:
            best = (w, cand)
    return compress_bags(best[1])


def width_lower_bound(g: RootedSignedGraph) -> int:
    """1 if some root or odd cycle exists, else 0 (holds for every TDM decomposition)."""
    return int(bool(g.roots) or not is_balanced(g))


def decompose_heuristic(g: RootedSignedGraph, budget: int = 6, seed: int = 0) -> HeuristicResult:
    """Best TDM decomposition found among a few constructions.

    Works on the series-reduced graph (non-root degree-2 vertices
    suppressed) and lifts the result back.  Candidates: elimination-order
    decompositions with greedy protectors and J the covering subtree of the
    roots; the same passed through the K-free/tame split and glued back; and
    the single bag with the roots as protector (small graphs only).  Stops
    early once the trivial lower bound is met; otherwise reports
    ``budget_exhausted``.
    """
    red, steps = suppress_series_vertices(g)
    res = _decompose_core(red, budget, seed)
    return HeuristicResult(lift_series_vertices(res.decomposition, steps), res.width, res.budget_exhausted)


def _decompose_core(g: RootedSignedGraph, budget: int, seed: int) -> HeuristicResult:
    lower = width_lower_bound(g)
    best: tuple[int, TDMDecomposition] | None = None

    def offer(cand: TDMDecomposition) -> bool:
        nonlocal best
        require_valid(cand, g)
        w = width(cand, g)
        if best is None or w < best[0]:
            best = (w, cand)
        return best[0] <= lower

    if len(g.vertices) <= SINGLE_BAG_LIMIT:
        if offer(TDMDecomposition(TreeDecomposition.single(g.vertices), {0: g.roots}, frozenset({0}))):
            return HeuristicResult(best[1], best[0], False)
    for td in tree_decompositions(g, budget, seed):
        J = steiner_strong_subtree(td, g.roots)
        direct = compress_bags(TDMDecomposition(td, choose_protectors(g, td, J, g.roots), J))
        if offer(direct):
            return HeuristicResult(best[1], best[0], False)
        kfree, _ = extract_from_tdm(g, direct)
        if offer(compose_with_tame_leaves(g, kfree, seed)):
            return HeuristicResult(best[1], best[0], False)
    log.info("decomposition budget of %d exhausted at width %d (lower bound %d)",
                budget, best[0], lower)
    return HeuristicResult(best[1], best[0], True)


def compose_with_tame_leaves(g: RootedSignedGraph, kfree: KFreeDecomposition,
                             seed: int = 0) -> TDMDecomposition:
    leaves = {}
    for j in kfree.base.leaves():
        part = kfree.base.bags[j] & kfree.free
        if part:
            leaves[j] = tame_heuristic(g.induced(part), budget=2, seed=seed)
    return compose_tdm(g, kfree, leaves)


def kfree_heuristic(g: RootedSignedGraph, budget: int = 6, seed: int = 0) -> KFreeDecomposition:
    """K-free decomposition: the better of the TDM split and a plain tree decomposition."""
    tdm = decompose_heuristic(g, budget, seed).decomposition
    split, _ = extract_from_tdm(g, tdm)
    plain = KFreeDecomposition(next(tree_decompositions(g, 1, seed)), frozenset())
    return min((split, plain), key=lambda d: width(d, g))
