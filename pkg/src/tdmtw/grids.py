"""Grid families and the even-grid subdivision construction.

Grid vertex ``(i, j)`` (row, column, both 1-based) of the k x k grid has id
``(i - 1) * k + (j - 1)``.  Cylinder vertex ``(r, p)`` (ring ``r`` from 1 =
outer, angular position ``p`` from 0) of the n x m cylinder has id
``(r - 1) * m + p``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .sgraph import (
    Edge,
    GraphError,
    MinorModel,
    RootedSignedGraph,
    SubdivisionModel,
    balancing_potential,
    cycle_parity,
    subdivision_to_minor_model,
)


@dataclass(frozen=True)
class GridCoords:
    """Bijection between vertex ids and coordinates."""
    kind: str  # "grid" or "cylinder"
    shape: tuple[int, int]
    coord_of: Mapping[int, tuple[int, int]]

    def __post_init__(self):
        coords = list(self.coord_of.values())
        if len(set(coords)) != len(coords):
            raise GraphError("coordinates are not distinct")

    @property
    def vertex_of(self) -> dict[tuple[int, int], int]:
        return {c: v for v, c in self.coord_of.items()}


def _grid_vid(k: int, i: int, j: int) -> int:
    return (i - 1) * k + (j - 1)


def make_grid(k: int, parity: int = 0) -> tuple[RootedSignedGraph, GridCoords]:
    """The k x k grid with every edge of the given parity and no roots."""
    if k < 1:
        raise GraphError(f"grid order must be at least 1, got {k}")
    coords = {_grid_vid(k, i, j): (i, j) for i in range(1, k + 1) for j in range(1, k + 1)}
    edges = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if j < k:
                edges.append((_grid_vid(k, i, j), _grid_vid(k, i, j + 1), parity))
            if i < k:
                edges.append((_grid_vid(k, i, j), _grid_vid(k, i + 1, j), parity))
    return RootedSignedGraph.build(coords, edges), GridCoords("grid", (k, k), coords)


def make_rooted_grid(k: int) -> RootedSignedGraph:
    """All-even k x k grid rooted at its first row."""
    g, _ = make_grid(k)
    return g.with_roots(_grid_vid(k, 1, j) for j in range(1, k + 1))


def make_cylindrical_grid(n: int, m: int, parity: int = 0) -> tuple[RootedSignedGraph, GridCoords]:
    """Path on n vertices times cycle on m vertices."""
    if n < 1 or m < 3:
        raise GraphError(f"cylinder needs n >= 1 and m >= 3, got n={n}, m={m}")
    vid = lambda r, p: (r - 1) * m + p  # noqa: E731
    coords = {vid(r, p): (r, p) for r in range(1, n + 1) for p in range(m)}
    edges = []
    for r in range(1, n + 1):
        for p in range(m):
            edges.append((vid(r, p), vid(r, (p + 1) % m), parity))
    for r in range(1, n):
        for p in range(m):
            edges.append((vid(r, p), vid(r + 1, p), parity))
    return RootedSignedGraph.build(coords, edges), GridCoords("cylinder", (n, m), coords)


def outer_terminals(k: int) -> list[int]:
    """x_1 .. x_2k: every other vertex of the outer ring of the k x 4k cylinder."""
    return [2 * (i - 1) for i in range(1, 2 * k + 1)]


def _with_chords(k: int, pairs: list[tuple[int, int]]) -> RootedSignedGraph:
    base, _ = make_cylindrical_grid(k, 4 * k, parity=1)
    x = outer_terminals(k)
    nxt = base.next_edge_id()
    extra = tuple(Edge(nxt + t, x[a - 1], x[b - 1], 1) for t, (a, b) in enumerate(pairs))
    return RootedSignedGraph(base.vertices, base.edges + extra, frozenset())


def make_parity_handle(k: int) -> RootedSignedGraph:
    """All-odd k x 4k cylinder plus chords x_i x_{2k-i+1}, i = 1..k."""
    if k < 1:
        raise GraphError(f"order must be at least 1, got {k}")
    return _with_chords(k, [(i, 2 * k - i + 1) for i in range(1, k + 1)])


def make_parity_vortex(k: int) -> RootedSignedGraph:
    """All-odd k x 4k cylinder plus chords x_{2i-1} x_{2i}, i = 1..k."""
    if k < 1:
        raise GraphError(f"order must be at least 1, got {k}")
    return _with_chords(k, [(2 * i - 1, 2 * i) for i in range(1, k + 1)])


# ---------------------------------------------------------------- cells and lookups

def _edge_index(g: RootedSignedGraph) -> dict[tuple[int, int], int]:
    return {(min(e.u, e.v), max(e.u, e.v)): e.id for e in g.edges}


def grid_cells(k: int) -> list[tuple[int, int]]:
    """Top-left corners (i, j) of the unit cells of the k x k grid."""
    return [(i, j) for i in range(1, k) for j in range(1, k)]


def cell_cycle(k: int, index: Mapping[tuple[int, int], int], i: int, j: int,
               origin: tuple[int, int] = (0, 0), size: int | None = None) -> list[int]:
    """Edge ids of the cell with top-left corner (i, j) of a subgrid at ``origin`` in a ``size`` grid."""
    size = k if size is None else size
    oi, oj = origin
    corners = [(i, j), (i, j + 1), (i + 1, j + 1), (i + 1, j)]
    vids = [_grid_vid(size, oi + a, oj + b) for a, b in corners]
    return [index[(min(a, b), max(a, b))] for a, b in zip(vids, vids[1:] + vids[:1])]


def _check_square_grid(g: RootedSignedGraph, side: int) -> None:
    ref, _ = make_grid(side)
    if g.vertices != ref.vertices:
        raise GraphError(f"expected the vertices of the {side} x {side} grid")
    want = sorted((min(e.u, e.v), max(e.u, e.v)) for e in ref.edges)
    have = sorted((min(e.u, e.v), max(e.u, e.v)) for e in g.edges)
    if want != have:
        raise GraphError(f"edges do not form the {side} x {side} grid")


# ---------------------------------------------------------------- even grid construction

@dataclass(frozen=True)
class EvenGridResult:
    model: SubdivisionModel
    guest: RootedSignedGraph
    branch: str  # "subgrid" or "construct"
    subgrid: tuple[int, int] | None = None


def _anchor(k: int, x: int) -> int:
    return (k + 1) * (x - 1) + 1


def _subgrid_origin(k: int, a: int, b: int) -> tuple[int, int]:
    """Offset so that local (r, c) of H_{a,b} sits at host (f(a) + r, f(b-1) + c)."""
    return _anchor(k, a), _anchor(k, b - 1)


def _guest_shift(guest: RootedSignedGraph, parity: Mapping[int, int]) -> frozenset[int]:
    pot = balancing_potential(guest.with_parities(parity))
    if pot is None:
        raise GraphError("image parities are not balanced; some guest cell maps to an odd cycle")
    return frozenset(v for v, bit in pot.items() if bit)


def _walk(index, side: int, cells: list[tuple[int, int]]) -> tuple[int, ...]:
    vids = [_grid_vid(side, i, j) for i, j in cells]
    return tuple(index[(min(a, b), max(a, b))] for a, b in zip(vids, vids[1:]))


def find_even_grid_subdivision(g: RootedSignedGraph, k: int) -> EvenGridResult:
    """An even k x k grid as a subdivision of a signed k^2 x k^2 grid.

    If some subgrid H_{a,b} (a in 1..k-1, b in 2..k) has only even cells, it
    is returned directly.  Otherwise each H_{a,b} has an odd cell and the
    paths for vertical guest edges in columns b >= 2 are routed through it,
    picking the detour around the odd cell whenever the direct route would
    leave the guest cell to the left odd.
    """
    if k < 1:
        raise GraphError(f"order must be at least 1, got {k}")
    side = k * k
    _check_square_grid(g, side)
    index = _edge_index(g)
    parity = {e.id: e.parity for e in g.edges}
    guest, _ = make_grid(k)
    gindex = _edge_index(guest)
    gid = lambda a, b: _grid_vid(k, a, b)  # noqa: E731

    odd_cell: dict[tuple[int, int], tuple[int, int]] = {}
    for a in range(1, k):
        for b in range(2, k + 1):
            origin = _subgrid_origin(k, a, b)
            found = None
            for (i, j) in grid_cells(k):
                if cycle_parity(g, cell_cycle(k, index, i, j, origin, side)):
                    found = (i, j)
                    break
            if found is None:
                return _subgrid_result(g, k, a, b, guest, index)
            odd_cell[(a, b)] = found

    f = lambda x: _anchor(k, x)  # noqa: E731
    vertex_map = {gid(a, b): _grid_vid(side, f(a), f(b)) for a in range(1, k + 1) for b in range(1, k + 1)}
    path_map: dict[int, tuple[int, ...]] = {}
    for a in range(1, k + 1):
        for b in range(1, k):
            path_map[gindex[(gid(a, b), gid(a, b + 1))]] = _walk(
                index, side, [(f(a), c) for c in range(f(b), f(b + 1) + 1)])
    for a in range(1, k):
        path_map[gindex[(gid(a, 1), gid(a + 1, 1))]] = _walk(
            index, side, [(r, 1) for r in range(f(a), f(a + 1) + 1)])
    for a in range(1, k):
        for b in range(2, k + 1):
            oi, oj = _subgrid_origin(k, a, b)
            r0, c0 = odd_cell[(a, b)]
            options = []
            for detour in (False, True):
                local = [(1, c) for c in range(k, c0, -1)]
                local += [(r, c0 + 1) for r in range(2, r0 + 1)]
                if detour:
                    local += [(r0, c0), (r0 + 1, c0)]
                local += [(r, c0 + 1) for r in range(r0 + 1, k + 1)]
                local += [(k, c) for c in range(c0 + 2, k + 1)]
                cells = [(f(a), f(b)), (f(a) + 1, f(b))]
                cells += [(oi + r, oj + c) for r, c in local]
                cells += [(f(a + 1) - 1, f(b)), (f(a + 1), f(b))]
                options.append(_walk(index, side, cells))
            left = gindex[(gid(a, b - 1), gid(a + 1, b - 1))]
            top = gindex[(gid(a, b - 1), gid(a, b))]
            bottom = gindex[(gid(a + 1, b - 1), gid(a + 1, b))]
            fixed = sum(parity[e] for eid in (left, top, bottom) for e in path_map[eid]) % 2
            for opt in options:
                if (fixed + sum(parity[e] for e in opt)) % 2 == 0:
                    path_map[gindex[(gid(a, b), gid(a + 1, b))]] = opt
                    break
            else:  # pragma: no cover - the two options differ by an odd cell
                raise GraphError("no even routing found")
    image_parity = {eid: sum(parity[e] for e in path) % 2 for eid, path in path_map.items()}
    model = SubdivisionModel(vertex_map, path_map, _guest_shift(guest, image_parity))
    return EvenGridResult(model, guest, "construct")


def _subgrid_result(g, k, a, b, guest, index) -> EvenGridResult:
    side = k * k
    oi, oj = _subgrid_origin(k, a, b)
    vertex_map = {_grid_vid(k, i, j): _grid_vid(side, oi + i, oj + j)
                  for i in range(1, k + 1) for j in range(1, k + 1)}
    path_map = {}
    for e in guest.edges:
        x, y = vertex_map[e.u], vertex_map[e.v]
        path_map[e.id] = (index[(min(x, y), max(x, y))],)
    image_parity = {eid: g.edge_by_id[p[0]].parity for eid, p in path_map.items()}
    model = SubdivisionModel(vertex_map, path_map, _guest_shift(guest, image_parity))
    return EvenGridResult(model, guest, "subgrid", (a, b))


def find_even_rooted_grid_minor(g: RootedSignedGraph, k: int) -> tuple[MinorModel, RootedSignedGraph]:
    """Rooted minor model of the rooted k x k grid in a signed k^2 x k^2 grid rooted at row 1.

    Returns ``(model, guest)``.  When the even grid sits in a subgrid below
    the first row, its top row is joined to the host's first row by straight
    column paths, which are added to the trees.
    """
    side = k * k
    expected = frozenset(_grid_vid(side, 1, j) for j in range(1, side + 1))
    if g.roots != expected:
        raise GraphError("host roots must be exactly the first row")
    res = find_even_grid_subdivision(g, k)
    guest = make_rooted_grid(k)
    model = res.model
    extensions = {}
    if res.branch == "subgrid":
        index = _edge_index(g)
        for j in range(1, k + 1):
            h = _grid_vid(k, 1, j)
            top = model.vertex_map[h]
            row, col = top // side + 1, top % side + 1
            extensions[h] = _walk(index, side, [(r, col) for r in range(row, 0, -1)])
    return subdivision_to_minor_model(g, guest, model, extensions), guest


def even_grid_image_cells(g: RootedSignedGraph, k: int, model: SubdivisionModel) -> list[int]:
    """Parity of the image of each guest cell (all zero for a correct model)."""
    guest, _ = make_grid(k)
    gindex = _edge_index(guest)
    out = []
    for (i, j) in grid_cells(k):
        cyc = cell_cycle(k, gindex, i, j)
        total = 0
        for eid in cyc:
            total += sum(g.edge_by_id[x].parity for x in model.path_map[eid])
        out.append(total % 2)
    return out
