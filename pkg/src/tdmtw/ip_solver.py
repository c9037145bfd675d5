"""Dynamic program over K-free decompositions for two-nonzero integer programs.

Tables store only finite entries; a missing key means minus infinity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .decomposition.types import KFreeDecomposition, TreeDecomposition, require_valid
from .matrix import IPInstance

NEG_INF = float("-inf")
ORACLE_LIMIT = 10**7
OPTIMAL = "Optimal"
INFEASIBLE = "Infeasible"


class OracleLimitError(ValueError):
    pass


@dataclass(frozen=True)
class PartialAssignment:
    """Values for the variables in ``scope`` (sorted)."""
    scope: tuple[int, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.scope) != len(self.values):
            raise ValueError("scope and values differ in length")
        if list(self.scope) != sorted(set(self.scope)):
            raise ValueError("scope must be sorted and duplicate free")

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> PartialAssignment:
        keys = tuple(sorted(mapping))
        return cls(keys, tuple(int(mapping[k]) for k in keys))

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.scope, self.values))

    def restrict(self, keep: Iterable[int]) -> PartialAssignment:
        keep = set(keep)
        pairs = [(v, x) for v, x in zip(self.scope, self.values) if v in keep]
        return PartialAssignment(tuple(v for v, _ in pairs), tuple(x for _, x in pairs))

    def within_bounds(self, inst: IPInstance) -> bool:
        return all(inst.lower[v] <= x <= inst.upper[v] for v, x in zip(self.scope, self.values))


@dataclass
class DPTables:
    """p- and s-tables; keys are value tuples over the sorted ``scope`` of each node."""
    root: int
    tree: TreeDecomposition
    parent: dict[int, int | None]
    scope: dict[int, tuple[int, ...]]
    p: dict[int, dict[tuple[int, ...], int]] = field(default_factory=dict)
    s: dict[int, dict[tuple[int, ...], int]] = field(default_factory=dict)
    s_scope: dict[int, tuple[int, ...]] = field(default_factory=dict)
    s_arg: dict[int, dict[tuple[int, ...], tuple[int, ...]]] = field(default_factory=dict)

    def p_value(self, t: int, eta: PartialAssignment):
        if eta.scope != self.scope[t]:
            raise KeyError(f"node {t} expects scope {self.scope[t]}, got {eta.scope}")
        return self.p[t].get(eta.values, NEG_INF)

    def s_value(self, t: int, eta: PartialAssignment):
        key = eta.restrict(self.s_scope[t])
        return self.s[t].get(key.values, NEG_INF)


@dataclass(frozen=True)
class SolveResult:
    status: str
    objective: int | None = None
    x: tuple[int, ...] | None = None
    tables: DPTables | None = None

    def __eq__(self, other):  # tables are bookkeeping, not part of the result
        if not isinstance(other, SolveResult):
            return NotImplemented
        return (self.status, self.objective, self.x) == (other.status, other.objective, other.x)


def check_witness(inst: IPInstance, x: Sequence[int]) -> bool:
    if len(x) != inst.n:
        return False
    if any(not (lo <= xi <= hi) for xi, lo, hi in zip(x, inst.lower, inst.upper)):
        return False
    for (ca, a, cb, b), bi in zip(inst.A.sparse_rows(), inst.b):
        if a * x[ca] + b * x[cb] > bi:
            return False
    return True


# ---------------------------------------------------------------- row bookkeeping

class _Rows:
    def __init__(self, inst: IPInstance):
        self.inst = inst
        self.rows = [(ca, a, cb, b, bi) for (ca, a, cb, b), bi in zip(inst.A.sparse_rows(), inst.b)]
        self.by_var: dict[int, list[int]] = {v: [] for v in range(inst.n)}
        for i, (ca, _, cb, _, _) in enumerate(self.rows):
            self.by_var[ca].append(i)
            self.by_var[cb].append(i)

    def inside(self, vs: Iterable[int]) -> list[int]:
        vs = set(vs)
        return [i for i, (ca, _, cb, _, _) in enumerate(self.rows) if ca in vs and cb in vs]


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _tighten(coef: int, rhs: int, lo: int, hi: int) -> tuple[int, int]:
    """Intersect [lo, hi] with {x : coef * x <= rhs} (coef nonzero)."""
    if coef > 0:
        return lo, min(hi, _floor_div(rhs, coef))
    return max(lo, _ceil_div(rhs, coef)), hi


def _assignments(vars_: Sequence[int], R: _Rows, rows: Sequence[int]):
    """Value tuples over ``vars_`` in lexicographic order, skipping row violations early."""
    inst = R.inst
    pos = {v: i for i, v in enumerate(vars_)}
    # a row is checked once its later variable is set
    check_at: list[list[tuple]] = [[] for _ in vars_]
    for r in rows:
        ca, a, cb, b, bi = R.rows[r]
        check_at[max(pos[ca], pos[cb])].append((pos[ca], a, pos[cb], b, bi))
    cur = [0] * len(vars_)

    def rec(i: int):
        if i == len(vars_):
            yield tuple(cur)
            return
        v = vars_[i]
        for x in range(inst.lower[v], inst.upper[v] + 1):
            cur[i] = x
            if all(a * cur[pa] + b * cur[pb] <= bi for pa, a, pb, b, bi in check_at[i]):
                yield from rec(i + 1)

    yield from rec(0)


# ---------------------------------------------------------------- leaves

def _solve_free(R: _Rows, free: Sequence[int], fixed: Mapping[int, int],
                rows: Sequence[int]) -> tuple[int, dict[int, int]] | None:
    """Best assignment of ``free`` given ``fixed``; lexicographically smallest among optima."""
    inst = R.inst
    lo = {v: inst.lower[v] for v in free}
    hi = {v: inst.upper[v] for v in free}
    inner: dict[int, list[tuple[int, int, int, int]]] = {v: [] for v in free}
    free_set = set(free)
    for r in rows:
        ca, a, cb, b, bi = R.rows[r]
        fa, fb = ca in free_set, cb in free_set
        if fa and fb:
            inner[ca].append((a, cb, b, bi))
            inner[cb].append((b, ca, a, bi))
        elif fa:
            lo[ca], hi[ca] = _tighten(a, bi - b * fixed[cb], lo[ca], hi[ca])
        elif fb:
            lo[cb], hi[cb] = _tighten(b, bi - a * fixed[ca], lo[cb], hi[cb])
        elif a * fixed[ca] + b * fixed[cb] > bi:
            return None
    if any(lo[v] > hi[v] for v in free):
        return None
    # split into independent components
    comps: list[list[int]] = []
    seen: set[int] = set()
    for s in sorted(free):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for _, y, _, _ in inner[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    total = 0
    assign: dict[int, int] = {}
    for comp in comps:
        res = _branch_and_bound(inst, comp, inner, lo, hi)
        if res is None:
            return None
        total += res[0]
        assign.update(res[1])
    return total, assign


def _branch_and_bound(inst, comp, inner, lo0, hi0):
    w = inst.w
    best: list = [None, None]
    cur: dict[int, int] = {}

    def bound(lo, hi, rest):
        return sum(max(w[v] * lo[v], w[v] * hi[v]) for v in rest)

    def rec(i: int, lo: dict, hi: dict, value: int):
        if i == len(comp):
            if best[0] is None or value > best[0]:
                best[0], best[1] = value, dict(cur)
            return
        if best[0] is not None and value + bound(lo, hi, comp[i:]) <= best[0]:
            return
        v = comp[i]
        for x in range(lo[v], hi[v] + 1):
            nlo, nhi = lo, hi
            ok = True
            for coef, y, cy, rhs in inner[v]:
                if y in cur:
                    if coef * x + cy * cur[y] > rhs:
                        ok = False
                        break
                    continue
                if nlo is lo:
                    nlo, nhi = dict(lo), dict(hi)
                nlo[y], nhi[y] = _tighten(cy, rhs - coef * x, nlo[y], nhi[y])
                if nlo[y] > nhi[y]:
                    ok = False
                    break
            if not ok:
                continue
            cur[v] = x
            rec(i + 1, nlo, nhi, value + w[v] * x)
            del cur[v]

    rec(0, dict(lo0), dict(hi0), 0)
    if best[0] is None:
        return None
    return best[0], best[1]


def solve_leaf(inst: IPInstance, bag: Iterable[int], free: Iterable[int],
               fixed: PartialAssignment | Mapping[int, int], *, _rows: _Rows | None = None,
               with_assignment: bool = False):
    """Optimum of the program restricted to ``bag`` with ``fixed`` on ``bag - free``.

    The value counts the weights of every bag variable, fixed ones included.
    Rows with both ends in the bag are enforced; returns ``NEG_INF`` when no
    extension is feasible.  With ``with_assignment`` the best values of the
    free variables are returned alongside.
    """
    R = _rows or _Rows(inst)
    bag = set(bag)
    free = sorted(set(free) & bag)
    fixed = fixed.as_dict() if isinstance(fixed, PartialAssignment) else dict(fixed)
    if set(fixed) != bag - set(free):
        raise ValueError("fixed assignment must cover exactly the non-free bag variables")
    if any(not (inst.lower[v] <= x <= inst.upper[v]) for v, x in fixed.items()):
        res = None
    else:
        res = _solve_free(R, free, fixed, R.inside(bag))
    if res is None:
        return (NEG_INF, None) if with_assignment else NEG_INF
    value = res[0] + sum(inst.w[v] * x for v, x in fixed.items())
    return (value, res[1]) if with_assignment else value


# ---------------------------------------------------------------- dynamic program

def _prepare_tree(td: TreeDecomposition, free: frozenset[int]) -> tuple[TreeDecomposition, int]:
    """Subdivide a single-edge tree and pick a non-leaf root."""
    if len(td.nodes) == 1:
        return td, td.nodes[0]
    if len(td.nodes) == 2:
        t1, t2 = td.nodes
        mid = max(td.nodes) + 1
        bags = dict(td.bags)
        bags[mid] = td.bags[t1] - free
        td = TreeDecomposition((t1, t2, mid), ((t1, mid), (mid, t2)), bags)
        return td, mid
    leaves = td.leaves()
    return td, min(t for t in td.nodes if t not in leaves)


def solve_dp(inst: IPInstance, kfree: KFreeDecomposition, adhesion_keys: bool = True) -> SolveResult:
    """Exact optimum via p- and s-tables over the K-free decomposition.

    ``adhesion_keys=False`` recomputes every s-entry for the full assignment
    of the parent instead of its restriction to the adhesion; values must not
    change.
    """
    g = inst.graph()
    require_valid(kfree, g)
    L = kfree.free
    td, root = _prepare_tree(kfree.base, L)
    parent, order = td.rooted(root)
    leaves = td.leaves() if len(td.nodes) > 1 else frozenset(td.nodes)
    R = _Rows(inst)
    tables = DPTables(root, td, parent, {t: tuple(sorted(td.bags[t] - L)) for t in td.nodes})
    children: dict[int, list[int]] = {t: [] for t in td.nodes}
    for t, par in parent.items():
        if par is not None:
            children[par].append(t)

    for t in reversed(order):
        scope = tables.scope[t]
        bag = td.bags[t]
        table: dict[tuple[int, ...], int] = {}
        if t in leaves:
            free = sorted(bag & L)
            for eta in _assignments(scope, R, R.inside(scope)):
                val = solve_leaf(inst, bag, free, dict(zip(scope, eta)), _rows=R)
                if val != NEG_INF:
                    table[eta] = val
        else:
            base_w = [inst.w[v] for v in scope]
            kids = children[t]
            for eta in _assignments(scope, R, R.inside(scope)):
                total = sum(wv * x for wv, x in zip(base_w, eta))
                ok = True
                for c in kids:
                    key = _project(scope, eta, tables.s_scope[c]) if adhesion_keys else eta
                    if adhesion_keys:
                        sval = tables.s[c].get(key)
                    else:
                        sval = _s_entry_full(tables, c, scope, eta, inst)
                    if sval is None:
                        ok = False
                        break
                    total += sval
                if ok:
                    table[eta] = total
        tables.p[t] = table
        if parent[t] is not None:
            _fill_s(tables, t, parent[t], inst)

    if not tables.p[root]:
        return SolveResult(INFEASIBLE, tables=tables)
    best_eta, best_val = None, None
    for eta, val in tables.p[root].items():  # insertion order is lexicographic
        if best_val is None or val > best_val:
            best_eta, best_val = eta, val
    x = _reconstruct(inst, tables, best_eta, L, leaves, children, R)
    return SolveResult(OPTIMAL, best_val, x, tables)


def _project(scope: Sequence[int], eta: Sequence[int], keep: Sequence[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(scope)}
    return tuple(eta[pos[v]] for v in keep)


def _fill_s(tables: DPTables, c: int, par: int, inst: IPInstance) -> None:
    adh = tuple(sorted(tables.tree.bags[c] & tables.tree.bags[par]))
    cscope = tables.scope[c]
    w_adh = [(cscope.index(v), inst.w[v]) for v in adh]
    s: dict[tuple[int, ...], int] = {}
    arg: dict[tuple[int, ...], tuple[int, ...]] = {}
    for eta, val in tables.p[c].items():
        key = _project(cscope, eta, adh)
        v = val - sum(w * eta[i] for i, w in w_adh)
        if key not in s or v > s[key]:
            s[key], arg[key] = v, eta
    tables.s[c], tables.s_scope[c], tables.s_arg[c] = s, adh, arg


def _s_entry_full(tables: DPTables, c: int, pscope, peta, inst: IPInstance):
    """s-entry for child ``c`` computed from the parent's full assignment."""
    cscope = tables.scope[c]
    pmap = dict(zip(pscope, peta))
    adh = [v for v in cscope if v in pmap]
    best = None
    for eta, val in tables.p[c].items():
        if all(eta[cscope.index(v)] == pmap[v] for v in adh):
            v = val - sum(inst.w[u] * eta[cscope.index(u)] for u in adh)
            if best is None or v > best:
                best = v
    return best


def _reconstruct(inst, tables: DPTables, root_eta, L, leaves, children, R) -> tuple[int, ...]:
    x: dict[int, int] = {}
    stack = [(tables.root, root_eta)]
    while stack:
        t, eta = stack.pop()
        scope = tables.scope[t]
        x.update(zip(scope, eta))
        if t in leaves:
            free = sorted(tables.tree.bags[t] & L)
            _, extra = solve_leaf(inst, tables.tree.bags[t], free, dict(zip(scope, eta)),
                                  _rows=R, with_assignment=True)
            x.update(extra)
        for c in children[t]:
            key = _project(scope, eta, tables.s_scope[c])
            stack.append((c, tables.s_arg[c][key]))
    return tuple(x[v] for v in range(inst.n))


# ---------------------------------------------------------------- oracle

def brute_force_oracle(inst: IPInstance, limit: int = ORACLE_LIMIT, chunk: int = 1 << 16) -> SolveResult:
    """Exhaustive search; ties go to the lexicographically smallest point."""
    sizes = [hi - lo + 1 for lo, hi in zip(inst.lower, inst.upper)]
    total = 1
    for s in sizes:
        total *= s
    if total > limit:
        raise OracleLimitError(f"search space of {total} points exceeds the limit {limit}")
    n = inst.n
    if n == 0:
        return SolveResult(OPTIMAL, 0, ())
    magnitude = max(abs(v) for v in (*inst.lower, *inst.upper, 1))
    coef = max(abs(v) for v in (*inst.w, *(c for r in inst.A.rows for c in r), 1))
    big = (n + 2) * magnitude * coef + max((abs(v) for v in inst.b), default=0) >= 2**62
    dtype = object if big else np.int64
    strides = [1] * n
    for j in range(n - 2, -1, -1):
        strides[j] = strides[j + 1] * sizes[j + 1]
    lower = np.array(inst.lower, dtype=dtype)
    w = np.array(inst.w, dtype=dtype)
    rows = inst.A.sparse_rows()
    best_val, best_x = None, None
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        X = np.empty((len(idx), n), dtype=dtype)
        for j in range(n):
            X[:, j] = (idx // strides[j]) % sizes[j]
        X = X + lower
        feasible = np.ones(len(idx), dtype=bool)
        for (ca, a, cb, b), bi in zip(rows, inst.b):
            feasible &= (a * X[:, ca] + b * X[:, cb]) <= bi
        if not feasible.any():
            continue
        vals = X @ w
        cand = np.flatnonzero(feasible)
        k = cand[int(np.argmax(vals[cand]))]
        v = int(vals[k])
        if best_val is None or v > best_val:
            best_val, best_x = v, tuple(int(t) for t in X[k])
    if best_val is None:
        return SolveResult(INFEASIBLE)
    return SolveResult(OPTIMAL, best_val, best_x)


def enumerate_leaf(inst: IPInstance, bag: Iterable[int], free: Iterable[int],
                   fixed: Mapping[int, int]):
    """Reference for ``solve_leaf``: plain enumeration without propagation."""
    bag = set(bag)
    free = sorted(set(free) & bag)
    R = _Rows(inst)
    rows = R.inside(bag)
    best = NEG_INF
    for vals in itertools.product(*(range(inst.lower[v], inst.upper[v] + 1) for v in free)):
        x = dict(fixed)
        x.update(zip(free, vals))
        if all(a * x[ca] + b * x[cb] <= bi for ca, a, cb, b, bi in (R.rows[r] for r in rows)):
            val = sum(inst.w[v] * x[v] for v in bag)
            best = max(best, val)
    return best
