"""Tree decompositions and their three enriched variants, with validators and widths."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import singledispatch
from typing import Iterable, Mapping

from ..sgraph import RootedSignedGraph, ocp_exact


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    clause: str
    detail: str

    def __str__(self) -> str:
        return f"{self.clause}: {self.detail}"


def _norm_edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class TreeDecomposition:
    """Tree on integer node ids with one vertex bag per node."""
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    bags: Mapping[int, frozenset[int]]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes)))
        object.__setattr__(self, "edges", tuple(sorted(_norm_edge(*e) for e in self.edges)))
        object.__setattr__(self, "bags", {t: frozenset(b) for t, b in sorted(self.bags.items())})

    @classmethod
    def single(cls, bag: Iterable[int], node: int = 0) -> TreeDecomposition:
        return cls((node,), (), {node: frozenset(bag)})

    def neighbors(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {t: [] for t in self.nodes}
        for a, b in self.edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        return {t: sorted(ns) for t, ns in adj.items()}

    def leaves(self) -> frozenset[int]:
        """Nodes of degree at most one (a single-node tree is its own leaf)."""
        return frozenset(t for t, ns in self.neighbors().items() if len(ns) <= 1)

    def adhesion(self, a: int, b: int) -> frozenset[int]:
        return self.bags[a] & self.bags[b]

    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.bags.values()) if self.bags else frozenset()

    def rooted(self, root: int) -> tuple[dict[int, int | None], list[int]]:
        """Parent map and BFS order from ``root``."""
        adj = self.neighbors()
        parent: dict[int, int | None] = {root: None}
        order = [root]
        queue = deque([root])
        while queue:
            t = queue.popleft()
            for s in adj[t]:
                if s not in parent:
                    parent[s] = t
                    order.append(s)
                    queue.append(s)
        return parent, order

    @property
    def base(self) -> TreeDecomposition:
        return self


@dataclass(frozen=True)
class KFreeDecomposition:
    base: TreeDecomposition
    free: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "free", frozenset(self.free))


@dataclass(frozen=True)
class TameOCPDecomposition:
    base: TreeDecomposition
    protectors: Mapping[int, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "protectors",
                           {t: frozenset(a) for t, a in sorted(self.protectors.items())})


@dataclass(frozen=True)
class TDMDecomposition:
    base: TreeDecomposition
    protectors: Mapping[int, frozenset[int]] = field(default_factory=dict)
    strong: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "protectors",
                           {t: frozenset(a) for t, a in sorted(self.protectors.items())})
        object.__setattr__(self, "strong", frozenset(self.strong))

    def tame(self) -> TameOCPDecomposition:
        return TameOCPDecomposition(self.base, self.protectors)


AnyDecomposition = TreeDecomposition | KFreeDecomposition | TameOCPDecomposition | TDMDecomposition


# ---------------------------------------------------------------- validation

def _tree_violations(td: TreeDecomposition, g: RootedSignedGraph) -> list[Violation]:
    out: list[Violation] = []
    nodes = set(td.nodes)
    if not nodes:
        return [Violation("tree", "decomposition has no nodes")]
    if len(nodes) != len(td.nodes):
        out.append(Violation("tree", "duplicate node ids"))
    if set(td.bags) != nodes:
        out.append(Violation("bags", f"bag keys {sorted(set(td.bags) ^ nodes)} do not match the nodes"))
    for a, b in td.edges:
        if a not in nodes or b not in nodes:
            out.append(Violation("tree", f"tree edge {a}-{b} has an unknown end"))
        elif a == b:
            out.append(Violation("tree", f"tree edge {a}-{b} is a loop"))
    if len(set(td.edges)) != len(td.edges):
        out.append(Violation("tree", "repeated tree edge"))
    if out:
        return out
    if len(td.edges) != len(nodes) - 1:
        out.append(Violation("tree", f"{len(td.edges)} edges on {len(nodes)} nodes"))
    parent, order = td.rooted(td.nodes[0])
    if len(order) != len(nodes):
        out.append(Violation("tree", f"nodes {sorted(nodes - set(order))} are not connected to node {td.nodes[0]}"))
    if out:
        return out
    for t in td.nodes:
        extra = td.bags[t] - g.vertices
        if extra:
            out.append(Violation("vertices", f"bag {t} holds non-vertices {sorted(extra)}"))
    where: dict[int, set[int]] = {v: set() for v in g.vertices}
    for t, bag in td.bags.items():
        for v in bag:
            if v in where:
                where[v].add(t)
    for v in sorted(g.vertices):
        if not where[v]:
            out.append(Violation("cover", f"vertex {v} is in no bag"))
    for e in g.edges:
        if not where[e.u] & where[e.v]:
            out.append(Violation("edge", f"edge {e.id} ({e.u}-{e.v}) lies in no bag"))
    adj = td.neighbors()
    for v in sorted(g.vertices):
        occ = where[v]
        if len(occ) <= 1:
            continue
        start = min(occ)
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for s in adj[t]:
                if s in occ and s not in seen:
                    seen.add(s)
                    stack.append(s)
        if seen != occ:
            out.append(Violation("connected", f"nodes holding vertex {v} do not form a subtree "
                                              f"(node {min(occ - seen)} is cut off)"))
    return out


def _protector_violations(td: TreeDecomposition, prot: Mapping[int, frozenset[int]]) -> list[Violation]:
    out: list[Violation] = []
    if set(prot) != set(td.nodes):
        return [Violation("protector-keys", f"protectors given for {sorted(prot)}, nodes are {list(td.nodes)}")]
    for t in td.nodes:
        extra = prot[t] - td.bags[t]
        if extra:
            out.append(Violation("protector-subset", f"protector of node {t} has {sorted(extra)} outside its bag"))
    for a, b in td.edges:
        adh = td.bags[a] & td.bags[b]
        for t, s in ((a, b), (b, a)):
            left = adh - prot[t]
            if len(left) > 1:
                out.append(Violation("adhesion", f"adhesion {t}-{s} leaves {sorted(left)} unprotected at node {t}"))
    return out


@singledispatch
def validate(decomp, g: RootedSignedGraph) -> list[Violation]:
    """Every violated definitional clause; empty means valid."""
    raise TypeError(f"not a decomposition: {type(decomp).__name__}")


@validate.register
def _(decomp: TreeDecomposition, g: RootedSignedGraph) -> list[Violation]:
    return _tree_violations(decomp, g)


@validate.register
def _(decomp: KFreeDecomposition, g: RootedSignedGraph) -> list[Violation]:
    td = decomp.base
    out = _tree_violations(td, g)
    if out:
        return out
    bad = decomp.free - g.vertices
    if bad:
        out.append(Violation("free-vertices", f"free set holds non-vertices {sorted(bad)}"))
    roots = decomp.free & g.roots
    if roots:
        out.append(Violation("free-roots", f"free set holds roots {sorted(roots)}"))
    leaves = td.leaves()
    for v in sorted(decomp.free & g.vertices):
        occ = [t for t in td.nodes if v in td.bags[t]]
        if len(occ) != 1:
            out.append(Violation("free-unique", f"free vertex {v} is in {len(occ)} bags {occ}"))
        elif occ[0] not in leaves:
            out.append(Violation("free-leaf", f"free vertex {v} sits in non-leaf node {occ[0]}"))
    return out


@validate.register
def _(decomp: TameOCPDecomposition, g: RootedSignedGraph) -> list[Violation]:
    out = _tree_violations(decomp.base, g)
    if out:
        return out
    return _protector_violations(decomp.base, decomp.protectors)


@validate.register
def _(decomp: TDMDecomposition, g: RootedSignedGraph) -> list[Violation]:
    td = decomp.base
    out = _tree_violations(td, g)
    if out:
        return out
    out = _protector_violations(td, decomp.protectors)
    if out and out[0].clause == "protector-keys":
        return out
    for t in td.nodes:
        missing = (g.roots & td.bags[t]) - decomp.protectors[t]
        if missing:
            out.append(Violation("protector-roots", f"protector of node {t} misses roots {sorted(missing)}"))
    J = decomp.strong
    unknown = J - set(td.nodes)
    if unknown:
        out.append(Violation("J-nodes", f"strong subtree names unknown nodes {sorted(unknown)}"))
        return out
    adj = td.neighbors()
    for t in sorted(J):
        for s in adj[t]:
            left = td.adhesion(t, s) - decomp.protectors[t]
            if left:
                out.append(Violation("strong", f"node {t} is in J but adhesion {t}-{s} leaves {sorted(left)}"))
    if J:
        start = min(J)
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for s in adj[t]:
                if s in J and s not in seen:
                    seen.add(s)
                    stack.append(s)
        if seen != J:
            out.append(Violation("J-subtree", f"strong nodes {sorted(J - seen)} are cut off from node {start}"))
    covered = frozenset().union(*(td.bags[j] for j in J)) if J else frozenset()
    uncovered = g.roots - covered
    if uncovered:
        out.append(Violation("J-roots", f"roots {sorted(uncovered)} lie in no bag of J"))
    return out


def is_valid(decomp, g: RootedSignedGraph) -> bool:
    return not validate(decomp, g)


def require_valid(decomp, g: RootedSignedGraph) -> None:
    problems = validate(decomp, g)
    if problems:
        raise DecompositionError("invalid decomposition: " + "; ".join(map(str, problems[:5])))


# ---------------------------------------------------------------- widths

def bag_score(g: RootedSignedGraph, bag: frozenset[int], prot: frozenset[int],
              cache: dict | None = None) -> int:
    """|prot| + OCP of the graph induced on ``bag - prot``."""
    rest = bag - prot
    if cache is not None and rest in cache:
        ocp = cache[rest]
    else:
        ocp = ocp_exact(g.induced(rest))
        if cache is not None:
            cache[rest] = ocp
    return len(prot) + ocp


@singledispatch
def width(decomp, g: RootedSignedGraph) -> int:
    raise TypeError(f"not a decomposition: {type(decomp).__name__}")


@width.register
def _(decomp: TreeDecomposition, g: RootedSignedGraph) -> int:
    require_valid(decomp, g)
    return max(len(b) for b in decomp.bags.values()) - 1


@width.register
def _(decomp: KFreeDecomposition, g: RootedSignedGraph) -> int:
    require_valid(decomp, g)
    return max(0, kfree_raw_width(decomp))


def kfree_raw_width(decomp: KFreeDecomposition) -> int:
    """max |bag - L| - 1 without the clamp at zero (may be -1)."""
    return max(len(b - decomp.free) for b in decomp.base.bags.values()) - 1


def _protected_width(td: TreeDecomposition, prot, g: RootedSignedGraph) -> int:
    cache: dict = {}
    return max(bag_score(g, td.bags[t], prot[t], cache) for t in td.nodes)


@width.register
def _(decomp: TameOCPDecomposition, g: RootedSignedGraph) -> int:
    require_valid(decomp, g)
    return _protected_width(decomp.base, decomp.protectors, g)


@width.register
def _(decomp: TDMDecomposition, g: RootedSignedGraph) -> int:
    require_valid(decomp, g)
    return _protected_width(decomp.base, decomp.protectors, g)


def kind_of(decomp) -> str:
    return {TreeDecomposition: "tree", KFreeDecomposition: "kfree",
            TameOCPDecomposition: "tocp", TDMDecomposition: "tdm"}[type(decomp)]
