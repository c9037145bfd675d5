"""Rooted signed multigraphs.

A rooted signed graph is a multigraph (parallel edges allowed, loops not)
whose edges carry a parity bit, together with a set of root vertices.
Besides the container type this module holds shifting, cycle parity, exact
odd cycle packing, and checkers for signed minor / subdivision models.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence


class GraphError(ValueError):
    pass


class Edge(NamedTuple):
    id: int
    u: int
    v: int
    parity: int

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class RootedSignedGraph:
    vertices: frozenset[int]
    edges: tuple[Edge, ...]
    roots: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "roots", frozenset(self.roots))
        edges = tuple(sorted((Edge(*e) for e in self.edges), key=lambda e: e.id))
        object.__setattr__(self, "edges", edges)
        seen = set()
        for e in edges:
            if e.id in seen:
                raise GraphError(f"duplicate edge id {e.id}")
            seen.add(e.id)
            if e.u == e.v:
                raise GraphError(f"edge {e.id} is a loop at {e.u}")
            if e.u not in self.vertices or e.v not in self.vertices:
                raise GraphError(f"edge {e.id} has an endpoint outside the vertex set")
            if e.parity not in (0, 1):
                raise GraphError(f"edge {e.id} has parity {e.parity}")
        if not self.roots <= self.vertices:
            raise GraphError("roots must be vertices")

    @classmethod
    def build(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int, int]],
              roots: Iterable[int] = ()) -> RootedSignedGraph:
        """Build from ``(u, v, parity)`` triples; edge ids are assigned 0, 1, ..."""
        return cls(frozenset(vertices),
                   tuple(Edge(i, u, v, p) for i, (u, v, p) in enumerate(edges)),
                   frozenset(roots))

    @cached_property
    def edge_by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def incidence(self) -> dict[int, tuple[Edge, ...]]:
        inc: dict[int, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.u].append(e)
            inc[e.v].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def neighbors(self, v: int) -> set[int]:
        return {e.other(v) for e in self.incidence[v]}

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def induced(self, keep: Iterable[int]) -> RootedSignedGraph:
        keep = frozenset(keep)
        if not keep <= self.vertices:
            raise GraphError("induced subgraph on unknown vertices")
        return RootedSignedGraph(keep,
                                 tuple(e for e in self.edges if e.u in keep and e.v in keep),
                                 self.roots & keep)

    def delete_vertices(self, drop: Iterable[int]) -> RootedSignedGraph:
        return self.induced(self.vertices - frozenset(drop))

    def with_parities(self, parity: Mapping[int, int]) -> RootedSignedGraph:
        return RootedSignedGraph(
            self.vertices,
            tuple(e._replace(parity=parity.get(e.id, e.parity)) for e in self.edges),
            self.roots)

    def with_roots(self, roots: Iterable[int]) -> RootedSignedGraph:
        return RootedSignedGraph(self.vertices, self.edges, frozenset(roots))

    def all_parity(self, bit: int) -> RootedSignedGraph:
        """Same multigraph under the constant signing (bit=0 all even, bit=1 all odd)."""
        return self.with_parities({e.id: bit for e in self.edges})

    def same_underlying(self, other: RootedSignedGraph) -> bool:
        if self.vertices != other.vertices or len(self.edges) != len(other.edges):
            return False
        return all(a.id == b.id and {a.u, a.v} == {b.u, b.v}
                   for a, b in zip(self.edges, other.edges))

    def next_vertex_id(self) -> int:
        return max(self.vertices, default=-1) + 1

    def next_edge_id(self) -> int:
        return max((e.id for e in self.edges), default=-1) + 1


# ---------------------------------------------------------------- shifting

def shift_at(g: RootedSignedGraph, v: int) -> RootedSignedGraph:
    if v not in g.vertices:
        raise GraphError(f"cannot shift at unknown vertex {v}")
    return shift_set(g, {v})


def shift_set(g: RootedSignedGraph, vs: Iterable[int]) -> RootedSignedGraph:
    """Shift at every vertex of ``vs`` (order is irrelevant)."""
    vs = set(vs)
    unknown = vs - g.vertices
    if unknown:
        raise GraphError(f"cannot shift at unknown vertices {sorted(unknown)}")
    return g.with_parities({e.id: e.parity ^ (e.u in vs) ^ (e.v in vs) for e in g.edges})


def balancing_potential(g: RootedSignedGraph) -> dict[int, int] | None:
    """Return ``pi`` with parity(uv) == pi[u] ^ pi[v] for every edge, or None.

    Such a potential exists iff every cycle is even.  The smallest vertex of
    each component gets potential 0.
    """
    pi: dict[int, int] = {}
    for s in sorted(g.vertices):
        if s in pi:
            continue
        pi[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for e in g.incidence[x]:
                y = e.other(x)
                want = pi[x] ^ e.parity
                if y not in pi:
                    pi[y] = want
                    queue.append(y)
                elif pi[y] != want:
                    return None
    return pi


def is_balanced(g: RootedSignedGraph) -> bool:
    return balancing_potential(g) is not None


def shifting_equivalent(g1: RootedSignedGraph, g2: RootedSignedGraph) -> frozenset[int] | None:
    """Shift set turning the signing of ``g1`` into that of ``g2``, or None.

    Both graphs must share vertices and edges (ids and endpoints).  The
    returned set is built from a BFS spanning forest rooted at the smallest
    vertex of each component, which never gets shifted.
    """
    if not g1.same_underlying(g2):
        raise GraphError("graphs do not share the same underlying multigraph")
    diff = g1.with_parities({e.id: e.parity ^ g2.edge_by_id[e.id].parity for e in g1.edges})
    pi = balancing_potential(diff)
    if pi is None:
        return None
    return frozenset(v for v, bit in pi.items() if bit)


# ---------------------------------------------------------------- cycles

def walk_vertices(g: RootedSignedGraph, edge_ids: Sequence[int]) -> list[int]:
    """Vertex sequence v0, v1, ..., v_len of an edge sequence read as a walk.

    For a walk of length >= 2 the start is forced by the first two edges;
    for a single edge the smaller endpoint is used.
    """
    try:
        es = [g.edge_by_id[i] for i in edge_ids]
    except KeyError as exc:
        raise GraphError(f"unknown edge {exc.args[0]}") from None
    if not es:
        raise GraphError("empty edge sequence")
    if len(es) == 1:
        start = min(es[0].u, es[0].v)
    else:
        first, second = es[0], es[1]
        shared = {first.u, first.v} & {second.u, second.v}
        if not shared:
            raise GraphError("consecutive edges do not share an endpoint")
        # for parallel first/second edges either end works; pick deterministically
        start = first.other(min(shared)) if len(shared) == 1 else min(shared)
    seq = [start]
    cur = start
    for e in es:
        if cur not in (e.u, e.v):
            raise GraphError(f"edge {e.id} does not continue the walk at vertex {cur}")
        cur = e.other(cur)
        seq.append(cur)
    return seq


def cycle_parity(g: RootedSignedGraph, cycle: Sequence[int]) -> int:
    """Parity of a simple cycle given as a sequence of edge ids."""
    if len(set(cycle)) != len(cycle):
        raise GraphError("cycle repeats an edge")
    if len(cycle) < 2:
        raise GraphError("a cycle needs at least two edges")
    seq = walk_vertices(g, cycle)
    if seq[0] != seq[-1]:
        raise GraphError("edge sequence is not closed")
    if len(set(seq[:-1])) != len(seq) - 1:
        raise GraphError("cycle repeats a vertex")
    return sum(g.edge_by_id[i].parity for i in cycle) % 2


def path_parity(g: RootedSignedGraph, path: Sequence[int]) -> int:
    return sum(g.edge_by_id[i].parity for i in path) % 2


# ---------------------------------------------------------------- odd cycle packing

class _OCPSolver:
    """Exact odd cycle packing on vertex subsets of one graph (bitmask memo).

    Branches on a low-degree vertex v: either v is unused, or v lies on one
    of the inclusion-minimal odd cycles through v (by vertex set) and that
    cycle joins the packing.
    """

    def __init__(self, g: RootedSignedGraph):
        self.order = sorted(g.vertices)
        self.index = {v: i for i, v in enumerate(self.order)}
        # adjacency as (neighbour index, edge id, parity)
        self.adj: list[list[tuple[int, int, int]]] = [[] for _ in self.order]
        for e in g.edges:
            a, b = self.index[e.u], self.index[e.v]
            self.adj[a].append((b, e.id, e.parity))
            self.adj[b].append((a, e.id, e.parity))
        self.memo: dict[int, int] = {0: 0}

    def solve(self, mask: int) -> int:
        mask = self._strip(mask)
        if mask in self.memo:
            return self.memo[mask]
        comps = self._components(mask)
        if len(comps) > 1:
            val = sum(self.solve(c) for c in comps)
        elif self._balanced(mask):
            val = 0
        else:
            val = self._branch(mask)
        self.memo[mask] = val
        return val

    def _deg(self, i: int, mask: int) -> int:
        return sum(1 for j, _, _ in self.adj[i] if mask >> j & 1)

    def _strip(self, mask: int) -> int:
        changed = True
        while changed:
            changed = False
            m = mask
            while m:
                low = m & -m
                i = low.bit_length() - 1
                m ^= low
                if self._deg(i, mask) <= 1:
                    mask &= ~low
                    changed = True
        return mask

    def _components(self, mask: int) -> list[int]:
        comps = []
        rest = mask
        while rest:
            low = rest & -rest
            comp = low
            stack = [low.bit_length() - 1]
            while stack:
                i = stack.pop()
                for j, _, _ in self.adj[i]:
                    bit = 1 << j
                    if mask & bit and not comp & bit:
                        comp |= bit
                        stack.append(j)
            comps.append(comp)
            rest &= ~comp
        return comps

    def _balanced(self, mask: int) -> bool:
        pot: dict[int, int] = {}
        m = mask
        while m:
            low = m & -m
            s = low.bit_length() - 1
            m ^= low
            if s in pot:
                continue
            pot[s] = 0
            stack = [s]
            while stack:
                i = stack.pop()
                for j, _, p in self.adj[i]:
                    if not mask >> j & 1:
                        continue
                    want = pot[i] ^ p
                    if j not in pot:
                        pot[j] = want
                        stack.append(j)
                    elif pot[j] != want:
                        return False
        return True

    def odd_cycles_through(self, v: int, mask: int) -> list[int]:
        """Inclusion-minimal vertex masks of odd cycles through index v."""
        found: set[int] = set()
        first_edge = [None]

        def dfs(x: int, used: int, parity: int, depth: int) -> None:
            for y, eid, p in self.adj[x]:
                if not mask >> y & 1:
                    continue
                if y == v:
                    # a 2-cycle must close along a different parallel edge
                    if depth >= 2 or (depth == 1 and eid != first_edge[0]):
                        if parity ^ p:
                            found.add(used)
                    continue
                if used >> y & 1:
                    continue
                if depth == 0:
                    first_edge[0] = eid
                dfs(y, used | 1 << y, parity ^ p, depth + 1)

        dfs(v, 1 << v, 0, 0)
        minimal = []
        for s in sorted(found, key=lambda s: (bin(s).count("1"), s)):
            if not any(t & s == t for t in minimal):
                minimal.append(s)
        return minimal

    def _branch(self, mask: int) -> int:
        best = 0
        upper = bin(mask).count("1") // 2
        cands = [i for i in range(len(self.order)) if mask >> i & 1]
        v = min(cands, key=lambda i: (self._deg(i, mask), i))
        best = self.solve(mask & ~(1 << v))
        if best >= upper:
            return best
        for cyc in self.odd_cycles_through(v, mask):
            best = max(best, 1 + self.solve(mask & ~cyc))
            if best >= upper:
                break
        return best


def ocp_exact(g: RootedSignedGraph) -> int:
    """Maximum number of pairwise vertex-disjoint odd cycles.

    Two parallel edges of different parity form an odd cycle of length 2.
    Exponential in the worst case; intended for graphs of a few dozen
    vertices with moderate cycle counts (bags, small instances).
    """
    solver = _OCPSolver(g)
    return solver.solve((1 << len(solver.order)) - 1)


def odd_cycle_packing(g: RootedSignedGraph) -> list[frozenset[int]]:
    """A maximum packing, as vertex sets of the chosen odd cycles."""
    solver = _OCPSolver(g)
    mask = (1 << len(solver.order)) - 1
    target = solver.solve(mask)
    packing: list[frozenset[int]] = []
    while target:
        mask = solver._strip(mask)
        live = [i for i in range(len(solver.order)) if mask >> i & 1]
        v = min(live, key=lambda i: (solver._deg(i, mask), i))
        for cyc in solver.odd_cycles_through(v, mask):
            if 1 + solver.solve(mask & ~cyc) == target:
                packing.append(frozenset(solver.order[i] for i in live if cyc >> i & 1))
                mask &= ~cyc
                target -= 1
                break
        else:
            mask &= ~(1 << v)
    return packing


# ---------------------------------------------------------------- models

@dataclass(frozen=True)
class MinorModel:
    """Signed minor model: disjoint host trees per guest vertex.

    ``branch_sets[h]`` is the vertex set of the tree for guest vertex ``h`` and
    ``tree_edges[h]`` its host edge ids.  ``edge_map`` sends guest edge ids to
    host edge ids and ``shift_set`` is the host shifting that makes every tree
    edge even and every mapped edge carry the guest parity.
    """
    branch_sets: Mapping[int, frozenset[int]]
    tree_edges: Mapping[int, frozenset[int]]
    edge_map: Mapping[int, int]
    shift_set: frozenset[int] = frozenset()


@dataclass(frozen=True)
class SubdivisionModel:
    """Guest vertices to host vertices; guest edges to host paths.

    ``path_map[e]`` lists host edge ids from ``vertex_map[u]`` to
    ``vertex_map[v]`` where ``u, v`` are the endpoints of guest edge ``e`` in
    stored order.  ``guest_shift_set`` shifts the guest so that every path
    parity matches the shifted guest parity.
    """
    vertex_map: Mapping[int, int]
    path_map: Mapping[int, tuple[int, ...]]
    guest_shift_set: frozenset[int] = frozenset()


def minor_model_violations(host: RootedSignedGraph, guest: RootedSignedGraph,
                           m: MinorModel, rooted: bool = False) -> list[str]:
    """Empty list iff ``m`` is a valid (rooted) signed minor model."""
    out: list[str] = []
    if set(m.branch_sets) != guest.vertices:
        out.append("branch_sets keys differ from guest vertices")
    if set(m.tree_edges) != set(m.branch_sets):
        out.append("tree_edges keys differ from branch_sets keys")
    if set(m.edge_map) != {e.id for e in guest.edges}:
        out.append("edge_map keys differ from guest edges")
    if not set(m.shift_set) <= host.vertices:
        out.append("shift_set contains non-host vertices")
    if out:
        return out
    shifted = shift_set(host, m.shift_set)
    owner: dict[int, int] = {}
    for h in sorted(m.branch_sets):
        bs = m.branch_sets[h]
        if not bs:
            out.append(f"tree of guest vertex {h} is empty")
            continue
        if not bs <= host.vertices:
            out.append(f"tree of guest vertex {h} uses non-host vertices")
            continue
        for x in sorted(bs):
            if x in owner:
                out.append(f"host vertex {x} in trees of {owner[x]} and {h}")
            owner[x] = h
        tes = m.tree_edges[h]
        if len(tes) != len(bs) - 1:
            out.append(f"tree of guest vertex {h} has {len(tes)} edges for {len(bs)} vertices")
            continue
        bad = False
        parent = {x: x for x in bs}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for eid in sorted(tes):
            e = shifted.edge_by_id.get(eid)
            if e is None or e.u not in bs or e.v not in bs:
                out.append(f"tree edge {eid} of guest vertex {h} leaves its branch set")
                bad = True
                break
            if e.parity != 0:
                out.append(f"tree edge {eid} of guest vertex {h} is odd after shifting")
                bad = True
            ru, rv = find(e.u), find(e.v)
            if ru == rv:
                out.append(f"tree edges of guest vertex {h} contain a cycle")
                bad = True
                break
            parent[ru] = rv
        if not bad and len({find(x) for x in bs}) != 1:
            out.append(f"tree of guest vertex {h} is disconnected")
    used: dict[int, int] = {}
    for ge in guest.edges:
        he_id = m.edge_map[ge.id]
        he = shifted.edge_by_id.get(he_id)
        if he is None:
            out.append(f"guest edge {ge.id} maps to unknown host edge {he_id}")
            continue
        if he_id in used:
            out.append(f"host edge {he_id} is the image of guest edges {used[he_id]} and {ge.id}")
        used[he_id] = ge.id
        ends = {owner.get(he.u), owner.get(he.v)}
        if ends != {ge.u, ge.v} or owner.get(he.u) == owner.get(he.v):
            out.append(f"guest edge {ge.id} maps to host edge {he_id} not joining its end trees")
        if he.parity != ge.parity:
            out.append(f"guest edge {ge.id} has parity {ge.parity} but its image is {he.parity}")
    if rooted:
        for r in sorted(guest.roots):
            if not m.branch_sets[r] & host.roots:
                out.append(f"tree of guest root {r} holds no host root")
    return out


def verify_minor_model(host, guest, m: MinorModel, rooted: bool = False) -> bool:
    return not minor_model_violations(host, guest, m, rooted)


def subdivision_model_violations(host: RootedSignedGraph, guest: RootedSignedGraph,
                                 s: SubdivisionModel) -> list[str]:
    out: list[str] = []
    if set(s.vertex_map) != guest.vertices:
        return ["vertex_map keys differ from guest vertices"]
    if set(s.path_map) != {e.id for e in guest.edges}:
        return ["path_map keys differ from guest edges"]
    if not set(s.guest_shift_set) <= guest.vertices:
        return ["guest_shift_set contains non-guest vertices"]
    images = list(s.vertex_map.values())
    if len(set(images)) != len(images):
        out.append("vertex_map is not injective")
    if not set(images) <= host.vertices:
        out.append("vertex_map hits non-host vertices")
        return out
    branch = set(images)
    shifted_guest = shift_set(guest, s.guest_shift_set)
    interior_owner: dict[int, int] = {}
    edge_owner: dict[int, int] = {}
    for ge in shifted_guest.edges:
        path = s.path_map[ge.id]
        if not path:
            out.append(f"guest edge {ge.id} maps to an empty path")
            continue
        if any(eid not in host.edge_by_id for eid in path):
            out.append(f"path of guest edge {ge.id} uses unknown host edges")
            continue
        start, end = s.vertex_map[ge.u], s.vertex_map[ge.v]
        seq = [start]
        ok = True
        for eid in path:
            he = host.edge_by_id[eid]
            if seq[-1] not in (he.u, he.v):
                out.append(f"path of guest edge {ge.id} breaks at host edge {eid}")
                ok = False
                break
            seq.append(he.other(seq[-1]))
        if not ok:
            continue
        if seq[-1] != end:
            out.append(f"path of guest edge {ge.id} ends at {seq[-1]}, expected {end}")
        if len(set(seq)) != len(seq):
            out.append(f"path of guest edge {ge.id} repeats a vertex")
        for x in seq[1:-1]:
            if x in branch:
                out.append(f"path of guest edge {ge.id} passes through branch vertex {x}")
            elif x in interior_owner:
                out.append(f"host vertex {x} interior to paths of guest edges "
                           f"{interior_owner[x]} and {ge.id}")
            interior_owner.setdefault(x, ge.id)
        for eid in path:
            if eid in edge_owner:
                out.append(f"host edge {eid} used by paths of guest edges {edge_owner[eid]} and {ge.id}")
            edge_owner.setdefault(eid, ge.id)
        if path_parity(host, path) != ge.parity:
            out.append(f"path of guest edge {ge.id} has parity {path_parity(host, path)}, "
                       f"shifted guest parity is {ge.parity}")
    return out


def verify_subdivision_model(host, guest, s: SubdivisionModel) -> bool:
    return not subdivision_model_violations(host, guest, s)


def subdivision_to_minor_model(host: RootedSignedGraph, guest: RootedSignedGraph,
                               s: SubdivisionModel,
                               extensions: Mapping[int, tuple[int, ...]] | None = None
                               ) -> MinorModel:
    """Turn a subdivision model into a minor model.

    The interior of each path joins the tree of the path's first end and the
    last path edge becomes the edge image.  ``extensions[h]`` optionally
    lists host edge ids of an extra path leaving ``vertex_map[h]`` that is
    added to the tree of ``h`` (used to reach host roots).
    """
    branch: dict[int, set[int]] = {h: {s.vertex_map[h]} for h in guest.vertices}
    tree_edges: dict[int, set[int]] = {h: set() for h in guest.vertices}
    edge_map: dict[int, int] = {}
    for ge in guest.edges:
        path = s.path_map[ge.id]
        cur = s.vertex_map[ge.u]
        for eid in path[:-1]:
            cur = host.edge_by_id[eid].other(cur)
            branch[ge.u].add(cur)
            tree_edges[ge.u].add(eid)
        edge_map[ge.id] = path[-1]
    for h, ext in (extensions or {}).items():
        cur = s.vertex_map[h]
        for eid in ext:
            cur = host.edge_by_id[eid].other(cur)
            branch[h].add(cur)
            tree_edges[h].add(eid)
    # potential along each tree, seeded by the guest shift
    sigma: dict[int, int] = {}
    for h in guest.vertices:
        root = s.vertex_map[h]
        sigma[root] = int(h in s.guest_shift_set)
        adj: dict[int, list[Edge]] = {}
        for eid in tree_edges[h]:
            e = host.edge_by_id[eid]
            adj.setdefault(e.u, []).append(e)
            adj.setdefault(e.v, []).append(e)
        stack = [root]
        while stack:
            x = stack.pop()
            for e in adj.get(x, ()):
                y = e.other(x)
                if y not in sigma:
                    sigma[y] = sigma[x] ^ e.parity
                    stack.append(y)
    return MinorModel(
        {h: frozenset(b) for h, b in branch.items()},
        {h: frozenset(t) for h, t in tree_edges.items()},
        edge_map,
        frozenset(x for x, bit in sigma.items() if bit),
    )


# ---------------------------------------------------------------- odd minors

@dataclass(frozen=True)
class OddMinorModel:
    """Odd-minor model: trees and edge map plus a host 2-colouring in {1, 2}."""
    branch_sets: Mapping[int, frozenset[int]]
    tree_edges: Mapping[int, frozenset[int]]
    edge_map: Mapping[int, int]
    coloring: Mapping[int, int] = field(default_factory=dict)


def coloring_to_shift_set(host: RootedSignedGraph, tree_edges: Mapping[int, Iterable[int]],
                          coloring: Mapping[int, int]) -> frozenset[int]:
    """Shift set (colour class 2) for a colouring proper on each model tree.

    Uncoloured vertices count as colour 1.
    """
    for h, eids in tree_edges.items():
        for eid in eids:
            e = host.edge_by_id[eid]
            if coloring.get(e.u, 1) == coloring.get(e.v, 1):
                raise GraphError(f"colouring is not proper on tree edge {eid} of guest vertex {h}")
    bad = {c for c in coloring.values() if c not in (1, 2)}
    if bad:
        raise GraphError(f"colours must be 1 or 2, got {sorted(bad)}")
    return frozenset(v for v, c in coloring.items() if c == 2)


def shift_set_to_coloring(host: RootedSignedGraph, shift: Iterable[int]) -> dict[int, int]:
    shift = set(shift)
    return {v: 2 if v in shift else 1 for v in sorted(host.vertices)}


def odd_minor_to_signed(host: RootedSignedGraph, odd: OddMinorModel) -> MinorModel:
    """Odd-minor model of H in G  ->  signed minor model of (H, all odd) in (G, all odd)."""
    return MinorModel(dict(odd.branch_sets), dict(odd.tree_edges), dict(odd.edge_map),
                      coloring_to_shift_set(host, odd.tree_edges, odd.coloring))


def signed_to_odd_minor(host: RootedSignedGraph, m: MinorModel) -> OddMinorModel:
    return OddMinorModel(dict(m.branch_sets), dict(m.tree_edges), dict(m.edge_map),
                         shift_set_to_coloring(host, m.shift_set))


def odd_minor_violations(host: RootedSignedGraph, guest: RootedSignedGraph,
                         odd: OddMinorModel) -> list[str]:
    """Check an odd-minor model directly: proper on trees, monochromatic images."""
    out = minor_model_violations(host.all_parity(0), guest.all_parity(0),
                                 MinorModel(odd.branch_sets, odd.tree_edges, odd.edge_map))
    if out:
        return out
    col = lambda x: odd.coloring.get(x, 1)  # noqa: E731
    for h, eids in odd.tree_edges.items():
        for eid in eids:
            e = host.edge_by_id[eid]
            if col(e.u) == col(e.v):
                out.append(f"colouring not proper on tree edge {eid} of guest vertex {h}")
    for ge_id, he_id in odd.edge_map.items():
        e = host.edge_by_id[he_id]
        if col(e.u) != col(e.v):
            out.append(f"image {he_id} of guest edge {ge_id} is not monochromatic")
    return out


# ---------------------------------------------------------------- subdivision

def subdivide_even_edges(g: RootedSignedGraph) -> tuple[RootedSignedGraph, dict[int, tuple[int, ...]]]:
    """Subdivide each even edge once; every edge of the result is odd.

    An even edge ``e = uv`` becomes ``u -x- v``: edge ``e`` keeps its id on the
    ``u x`` half, the ``x v`` half gets a fresh id.  Returns the new graph and
    ``path_map`` from each subdivided edge id to its interior vertices.
    """
    nv, ne = g.next_vertex_id(), g.next_edge_id()
    vertices = set(g.vertices)
    edges: list[Edge] = []
    path_map: dict[int, tuple[int, ...]] = {}
    for e in g.edges:
        if e.parity:
            edges.append(e)
            continue
        x = nv
        nv += 1
        vertices.add(x)
        edges.append(Edge(e.id, e.u, x, 1))
        edges.append(Edge(ne, x, e.v, 1))
        ne += 1
        path_map[e.id] = (x,)
    return RootedSignedGraph(frozenset(vertices), tuple(edges), g.roots), path_map


def contract_edge(g: RootedSignedGraph, edge_id: int) -> RootedSignedGraph:
    """Contract an even edge ``uv`` into ``min(u, v)``; roots survive.

    Raises if the edge is odd or if contraction would create a loop (a
    parallel edge between the same ends).
    """
    e = g.edge_by_id[edge_id]
    if e.parity:
        raise GraphError(f"edge {edge_id} is odd; shift first")
    keep, gone = min(e.u, e.v), max(e.u, e.v)
    edges = []
    for f in g.edges:
        if f.id == edge_id:
            continue
        u = keep if f.u == gone else f.u
        v = keep if f.v == gone else f.v
        if u == v:
            raise GraphError(f"contracting edge {edge_id} turns edge {f.id} into a loop")
        edges.append(Edge(f.id, u, v, f.parity))
    roots = set(g.roots)
    if gone in roots:
        roots.discard(gone)
        roots.add(keep)
    return RootedSignedGraph(g.vertices - {gone}, tuple(edges), frozenset(roots))
