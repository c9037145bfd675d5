"""Line-oriented text formats.

Every format ignores blank lines and ``#`` comments, and every writer's
output parses back to an equal value.

graph::

    graph <n_vertices>
    vertices <id...>          # optional, default 0..n-1
    edge <id> <u> <v> <parity>
    roots <id...>             # optional

ip::

    ip <m> <n>
    row <i> <col_a> <coef_a> <col_b> <coef_b> <b_i>
    w <n ints>
    l <n ints>
    u <n ints>

decomposition::

    kind tree|kfree|tocp|tdm
    tree <n_nodes>
    tedge <t1> <t2>
    bag <t> <v...>
    prot <t> <v...>           # tocp, tdm
    J <t...>                  # tdm
    L <v...>                  # kfree

result::

    status Optimal|Infeasible
    objective <value>
    x <v> <value>

Subdivision models, minor models, path maps and grid coordinates have
their own small formats below.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .decomposition.types import (
    KFreeDecomposition,
    TameOCPDecomposition,
    TDMDecomposition,
    TreeDecomposition,
    kind_of,
)
from .grids import GridCoords
from .ip_solver import INFEASIBLE, OPTIMAL, SolveResult
from .matrix import IPInstance, TwoNonzeroMatrix
from .sgraph import Edge, MinorModel, RootedSignedGraph, SubdivisionModel


class FormatError(ValueError):
    pass


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _ints(no: int, toks: Iterable[str]) -> list[int]:
    try:
        return [int(t) for t in toks]
    except ValueError as exc:
        raise FormatError(f"line {no}: expected integers ({exc})") from None


def _ids(xs: Iterable[int]) -> str:
    return " ".join(str(x) for x in sorted(xs))


def _header(lines, word: str, nargs: int) -> tuple[int, list[int]]:
    try:
        no, toks = next(lines)
    except StopIteration:
        raise FormatError(f"empty input, expected '{word}' header") from None
    if toks[0] != word or len(toks) != nargs + 1:
        raise FormatError(f"line {no}: expected '{word}' with {nargs} argument(s)")
    return no, _ints(no, toks[1:])


# ---------------------------------------------------------------- graph

def parse_graph(text: str) -> RootedSignedGraph:
    lines = _lines(text)
    _, (n,) = _header(lines, "graph", 1)
    vertices = None
    edges: list[Edge] = []
    roots: list[int] = []
    for no, toks in lines:
        key, args = toks[0], _ints(no, toks[1:])
        if key == "vertices":
            vertices = args
        elif key == "edge":
            if len(args) != 4:
                raise FormatError(f"line {no}: edge needs <id> <u> <v> <parity>")
            eid, u, v, p = args
            if u == v:
                raise FormatError(f"line {no}: edge {eid} is a loop")
            edges.append(Edge(eid, u, v, p))
        elif key == "roots":
            roots.extend(args)
        else:
            raise FormatError(f"line {no}: unknown keyword {key!r}")
    if vertices is None:
        vertices = list(range(n))
    if len(set(vertices)) != n or len(vertices) != n:
        raise FormatError(f"header declares {n} vertices, got {len(set(vertices))} distinct")
    try:
        return RootedSignedGraph(frozenset(vertices), tuple(edges), frozenset(roots))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_graph(g: RootedSignedGraph) -> str:
    out = [f"graph {len(g.vertices)}"]
    if g.vertices != frozenset(range(len(g.vertices))):
        out.append(f"vertices {_ids(g.vertices)}")
    out += [f"edge {e.id} {e.u} {e.v} {e.parity}" for e in g.edges]
    if g.roots:
        out.append(f"roots {_ids(g.roots)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- ip

def parse_ip(text: str) -> IPInstance:
    lines = _lines(text)
    _, (m, n) = _header(lines, "ip", 2)
    rows: dict[int, tuple[int, int, int, int]] = {}
    b: dict[int, int] = {}
    vecs: dict[str, list[int]] = {}
    for no, toks in lines:
        key, args = toks[0], _ints(no, toks[1:])
        if key == "row":
            if len(args) != 6:
                raise FormatError(f"line {no}: row needs <i> <col_a> <coef_a> <col_b> <coef_b> <b_i>")
            i, ca, a, cb, cf, bi = args
            if i in rows:
                raise FormatError(f"line {no}: row {i} given twice")
            rows[i] = (ca, a, cb, cf)
            b[i] = bi
        elif key in ("w", "l", "u"):
            if len(args) != n:
                raise FormatError(f"line {no}: {key} needs {n} entries, got {len(args)}")
            vecs[key] = args
        else:
            raise FormatError(f"line {no}: unknown keyword {key!r}")
    if sorted(rows) != list(range(m)):
        raise FormatError(f"expected rows 0..{m - 1}, got {sorted(rows)}")
    missing = {"w", "l", "u"} - set(vecs)
    if missing:
        raise FormatError(f"missing vector(s) {sorted(missing)}")
    try:
        A = TwoNonzeroMatrix.from_sparse(n, [rows[i] for i in range(m)])
        return IPInstance(A, [b[i] for i in range(m)], vecs["w"], vecs["l"], vecs["u"])
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_ip(inst: IPInstance) -> str:
    out = [f"ip {inst.m} {inst.n}"]
    for i, ((ca, a, cb, cf), bi) in enumerate(zip(inst.A.sparse_rows(), inst.b)):
        out.append(f"row {i} {ca} {a} {cb} {cf} {bi}")
    for key, vec in (("w", inst.w), ("l", inst.lower), ("u", inst.upper)):
        out.append(" ".join([key, *map(str, vec)]))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- decompositions

KINDS = ("tree", "kfree", "tocp", "tdm")


def parse_decomposition(text: str):
    lines = _lines(text)
    try:
        no, toks = next(lines)
    except StopIteration:
        raise FormatError("empty input, expected 'kind' header") from None
    if toks[0] != "kind" or len(toks) != 2 or toks[1] not in KINDS:
        raise FormatError(f"line {no}: expected 'kind tree|kfree|tocp|tdm'")
    kind = toks[1]
    _, (n_nodes,) = _header(lines, "tree", 1)
    edges, bags, prot = [], {}, {}
    J, L = None, None
    for no, toks in lines:
        key, args = toks[0], _ints(no, toks[1:])
        if key == "tedge":
            if len(args) != 2:
                raise FormatError(f"line {no}: tedge needs two nodes")
            edges.append(tuple(args))
        elif key in ("bag", "prot"):
            if not args:
                raise FormatError(f"line {no}: {key} needs a node id")
            target = bags if key == "bag" else prot
            if args[0] in target:
                raise FormatError(f"line {no}: {key} for node {args[0]} given twice")
            target[args[0]] = frozenset(args[1:])
        elif key == "J" and kind == "tdm":
            J = frozenset(args)
        elif key == "L" and kind == "kfree":
            L = frozenset(args)
        else:
            raise FormatError(f"line {no}: keyword {key!r} not allowed for kind {kind}")
    if len(bags) != n_nodes:
        raise FormatError(f"header declares {n_nodes} nodes, found {len(bags)} bags")
    if prot and kind not in ("tocp", "tdm"):
        raise FormatError(f"protectors given for kind {kind}")
    base = TreeDecomposition(tuple(bags), tuple(edges), bags)
    if kind == "tree":
        return base
    if kind == "kfree":
        return KFreeDecomposition(base, L or frozenset())
    if kind == "tocp":
        return TameOCPDecomposition(base, prot)
    return TDMDecomposition(base, prot, J or frozenset())


def write_decomposition(decomp) -> str:
    kind = kind_of(decomp)
    td = decomp.base
    out = [f"kind {kind}", f"tree {len(td.nodes)}"]
    out += [f"tedge {a} {b}" for a, b in td.edges]
    out += [f"bag {t} {_ids(td.bags[t])}".rstrip() for t in td.nodes]
    if kind in ("tocp", "tdm"):
        out += [f"prot {t} {_ids(decomp.protectors.get(t, ()))}".rstrip() for t in td.nodes]
    if kind == "tdm":
        out.append(f"J {_ids(decomp.strong)}".rstrip())
    if kind == "kfree":
        out.append(f"L {_ids(decomp.free)}".rstrip())
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- results

def parse_result(text: str) -> SolveResult:
    status, objective, x = None, None, {}
    for no, toks in _lines(text):
        key = toks[0]
        if key == "status" and len(toks) == 2 and toks[1] in (OPTIMAL, INFEASIBLE):
            status = toks[1]
        elif key == "objective" and len(toks) == 2:
            objective = _ints(no, toks[1:])[0]
        elif key == "x" and len(toks) == 3:
            v, val = _ints(no, toks[1:])
            x[v] = val
        else:
            raise FormatError(f"line {no}: cannot parse {' '.join(toks)!r}")
    if status is None:
        raise FormatError("missing status line")
    if status == INFEASIBLE:
        return SolveResult(INFEASIBLE)
    if objective is None or sorted(x) != list(range(len(x))):
        raise FormatError("optimal result needs an objective and x values for 0..n-1")
    return SolveResult(OPTIMAL, objective, tuple(x[v] for v in range(len(x))))


def write_result(res: SolveResult) -> str:
    out = [f"status {res.status}"]
    if res.status == OPTIMAL:
        out.append(f"objective {res.objective}")
        out += [f"x {v} {val}" for v, val in enumerate(res.x)]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- models

def write_subdivision_model(s: SubdivisionModel) -> str:
    out = ["subdivision"]
    out += [f"vmap {h} {s.vertex_map[h]}" for h in sorted(s.vertex_map)]
    out += [" ".join(["path", str(e), *map(str, s.path_map[e])]) for e in sorted(s.path_map)]
    out.append(f"gshift {_ids(s.guest_shift_set)}".rstrip())
    return "\n".join(out) + "\n"


def parse_subdivision_model(text: str) -> SubdivisionModel:
    lines = _lines(text)
    _header(lines, "subdivision", 0)
    vmap, paths, shift = {}, {}, frozenset()
    for no, toks in lines:
        key, args = toks[0], _ints(no, toks[1:])
        if key == "vmap" and len(args) == 2:
            vmap[args[0]] = args[1]
        elif key == "path" and args:
            paths[args[0]] = tuple(args[1:])
        elif key == "gshift":
            shift = frozenset(args)
        else:
            raise FormatError(f"line {no}: cannot parse {' '.join(toks)!r}")
    return SubdivisionModel(vmap, paths, shift)


def write_minor_model(m: MinorModel) -> str:
    out = ["minor"]
    for h in sorted(m.branch_sets):
        out.append(f"branch {h} {_ids(m.branch_sets[h])}")
        out.append(f"tedges {h} {_ids(m.tree_edges[h])}".rstrip())
    out += [f"emap {e} {m.edge_map[e]}" for e in sorted(m.edge_map)]
    out.append(f"shift {_ids(m.shift_set)}".rstrip())
    return "\n".join(out) + "\n"


def parse_minor_model(text: str) -> MinorModel:
    lines = _lines(text)
    _header(lines, "minor", 0)
    branch, tedges, emap, shift = {}, {}, {}, frozenset()
    for no, toks in lines:
        key, args = toks[0], _ints(no, toks[1:])
        if key == "branch" and args:
            branch[args[0]] = frozenset(args[1:])
        elif key == "tedges" and args:
            tedges[args[0]] = frozenset(args[1:])
        elif key == "emap" and len(args) == 2:
            emap[args[0]] = args[1]
        elif key == "shift":
            shift = frozenset(args)
        else:
            raise FormatError(f"line {no}: cannot parse {' '.join(toks)!r}")
    return MinorModel(branch, tedges, emap, shift)


def write_path_map(path_map) -> str:
    out = ["pathmap"]
    out += [" ".join(["path", str(e), *map(str, path_map[e])]) for e in sorted(path_map)]
    return "\n".join(out) + "\n"


def parse_path_map(text: str) -> dict[int, tuple[int, ...]]:
    lines = _lines(text)
    _header(lines, "pathmap", 0)
    out = {}
    for no, toks in lines:
        args = _ints(no, toks[1:])
        if toks[0] != "path" or not args:
            raise FormatError(f"line {no}: expected 'path <edge> <interior...>'")
        out[args[0]] = tuple(args[1:])
    return out


def write_coords(c: GridCoords) -> str:
    out = [f"coords {c.kind} {c.shape[0]} {c.shape[1]}"]
    out += [f"at {v} {i} {j}" for v, (i, j) in sorted(c.coord_of.items())]
    return "\n".join(out) + "\n"


def parse_coords(text: str) -> GridCoords:
    lines = _lines(text)
    try:
        no, toks = next(lines)
    except StopIteration:
        raise FormatError("empty input, expected 'coords' header") from None
    if toks[0] != "coords" or len(toks) != 4 or toks[1] not in ("grid", "cylinder"):
        raise FormatError(f"line {no}: expected 'coords grid|cylinder <a> <b>'")
    kind = toks[1]
    shape = tuple(_ints(no, toks[2:]))
    coord_of = {}
    for no, toks in lines:
        args = _ints(no, toks[1:])
        if toks[0] != "at" or len(args) != 3:
            raise FormatError(f"line {no}: expected 'at <v> <i> <j>'")
        coord_of[args[0]] = (args[1], args[2])
    return GridCoords(kind, shape, coord_of)


def read(path: str | Path, parser):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return parser(text)
