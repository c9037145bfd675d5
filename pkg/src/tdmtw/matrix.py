"""Two-nonzero-per-row integer matrices, IP instances, and subdeterminants."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .sgraph import Edge, RootedSignedGraph, ocp_exact


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class TwoNonzeroMatrix:
    """Integer matrix with exactly two nonzero entries in every row."""
    n_cols: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.n_cols < 0:
            raise MatrixError("negative column count")
        for i, r in enumerate(rows):
            if len(r) != self.n_cols:
                raise MatrixError(f"row {i} has {len(r)} entries, expected {self.n_cols}")
            nz = sum(1 for x in r if x)
            if nz != 2:
                raise MatrixError(f"row {i} has {nz} nonzero entries; exactly two are required")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n_cols: int | None = None) -> TwoNonzeroMatrix:
        if n_cols is None:
            if not rows:
                raise MatrixError("n_cols is required for a matrix without rows")
            n_cols = len(rows[0])
        return cls(n_cols, tuple(tuple(r) for r in rows))

    @classmethod
    def from_sparse(cls, n_cols: int, rows: Sequence[tuple[int, int, int, int]]) -> TwoNonzeroMatrix:
        """Rows given as ``(col_a, coef_a, col_b, coef_b)``."""
        dense = []
        for i, (ca, a, cb, b) in enumerate(rows):
            if ca == cb:
                raise MatrixError(f"row {i} names column {ca} twice")
            if not (0 <= ca < n_cols and 0 <= cb < n_cols):
                raise MatrixError(f"row {i} references a column outside 0..{n_cols - 1}")
            r = [0] * n_cols
            r[ca], r[cb] = a, b
            dense.append(r)
        return cls(n_cols, tuple(tuple(r) for r in dense))

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return self.n_cols

    def support(self, i: int) -> tuple[int, int]:
        a, b = (j for j, x in enumerate(self.rows[i]) if x)
        return a, b

    def sparse_rows(self) -> list[tuple[int, int, int, int]]:
        out = []
        for i, r in enumerate(self.rows):
            a, b = self.support(i)
            out.append((a, r[a], b, r[b]))
        return out

    def inf_norm(self) -> int:
        return max((abs(x) for r in self.rows for x in r), default=0)

    def negate_column(self, j: int) -> TwoNonzeroMatrix:
        return TwoNonzeroMatrix(self.n_cols, tuple(
            tuple(-x if k == j else x for k, x in enumerate(r)) for r in self.rows))


def to_rooted_signed_graph(A: TwoNonzeroMatrix) -> RootedSignedGraph:
    """Columns become vertices, rows become edges.

    A row is an odd edge when its two entries share a sign, even otherwise;
    roots are the columns holding an entry outside {-1, 0, 1}.
    """
    edges = []
    roots = set()
    for i, (ca, a, cb, b) in enumerate(A.sparse_rows()):
        edges.append(Edge(i, ca, cb, int((a > 0) == (b > 0))))
        if abs(a) > 1:
            roots.add(ca)
        if abs(b) > 1:
            roots.add(cb)
    return RootedSignedGraph(frozenset(range(A.n_cols)), tuple(edges), frozenset(roots))


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    n = len(M)
    if n == 0:
        return 1
    a = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


SUBDET_SIZE_LIMIT = 8


def max_abs_subdeterminant(A: TwoNonzeroMatrix) -> int:
    """Largest |det| over all square submatrices (the empty minor counts as 1)."""
    m, n = A.m, A.n
    if min(m, n) > SUBDET_SIZE_LIMIT:
        raise MatrixError(
            f"min(m, n) = {min(m, n)} exceeds {SUBDET_SIZE_LIMIT}; "
            "use max_abs_subdeterminant_sampled for a lower bound")
    best = 1
    rows = A.rows
    for size in range(1, min(m, n) + 1):
        for rs in combinations(range(m), size):
            # columns outside the rows' support give a zero column
            cols_in_play = sorted({j for i in rs for j in A.support(i)})
            if len(cols_in_play) < size:
                continue
            for cs in combinations(cols_in_play, size):
                d = abs(bareiss_det([[rows[i][j] for j in cs] for i in rs]))
                if d > best:
                    best = d
    return best


def max_abs_subdeterminant_sampled(A: TwoNonzeroMatrix, samples: int = 10000, seed: int = 0) -> int:
    """Lower bound on the largest |det| from random square submatrices."""
    rng = random.Random(seed)
    best = 1
    k_max = min(A.m, A.n)
    for _ in range(samples if k_max else 0):
        size = rng.randint(1, k_max)
        rs = rng.sample(range(A.m), size)
        cs = rng.sample(range(A.n), size)
        best = max(best, abs(bareiss_det([[A.rows[i][j] for j in cs] for i in rs])))
    return best


@dataclass(frozen=True)
class DmodReport:
    delta: int
    inf_norm: int
    n_roots: int
    ocp: int
    converse_bound: int

    @property
    def norm_ok(self) -> bool:
        return self.inf_norm <= self.delta

    @property
    def roots_ok(self) -> bool:
        # |K| <= 2 log2(delta)  <=>  2^|K| <= delta^2
        return 2 ** self.n_roots <= self.delta ** 2

    @property
    def ocp_ok(self) -> bool:
        return 2 ** self.ocp <= self.delta

    @property
    def converse_ok(self) -> bool:
        return self.delta <= self.converse_bound

    @property
    def all_ok(self) -> bool:
        return self.norm_ok and self.roots_ok and self.ocp_ok and self.converse_ok

    def lines(self) -> list[str]:
        flag = lambda ok: "ok" if ok else "FAIL"  # noqa: E731
        return [
            f"delta {self.delta}",
            f"inf_norm {self.inf_norm} {flag(self.norm_ok)}",
            f"roots {self.n_roots} {flag(self.roots_ok)}",
            f"ocp {self.ocp} {flag(self.ocp_ok)}",
            f"converse_bound {self.converse_bound} {flag(self.converse_ok)}",
        ]


def check_dmod_bounds(A: TwoNonzeroMatrix) -> DmodReport:
    """Compare the largest subdeterminant with norm, root count and OCP."""
    g = to_rooted_signed_graph(A)
    norm = A.inf_norm()
    ocp = ocp_exact(g)
    return DmodReport(
        delta=max_abs_subdeterminant(A),
        inf_norm=norm,
        n_roots=len(g.roots),
        ocp=ocp,
        converse_bound=2 ** ocp * norm ** len(g.roots),
    )


@dataclass(frozen=True)
class IPInstance:
    """max w.x  s.t.  A x <= b,  lower <= x <= upper,  x integral."""
    A: TwoNonzeroMatrix
    b: tuple[int, ...]
    w: tuple[int, ...]
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self):
        for name in ("b", "w", "lower", "upper"):
            object.__setattr__(self, name, tuple(int(x) for x in getattr(self, name)))
        if len(self.b) != self.A.m:
            raise MatrixError(f"b has length {len(self.b)}, expected {self.A.m}")
        for name in ("w", "lower", "upper"):
            if len(getattr(self, name)) != self.A.n:
                raise MatrixError(f"{name} has length {len(getattr(self, name))}, expected {self.A.n}")
        for j, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if lo > hi:
                raise MatrixError(f"empty box for variable {j}: [{lo}, {hi}]")

    @property
    def n(self) -> int:
        return self.A.n

    @property
    def m(self) -> int:
        return self.A.m

    @property
    def domain_width(self) -> int:
        """d = max_v (u_v - l_v)."""
        return max((hi - lo for lo, hi in zip(self.lower, self.upper)), default=0)

    def objective(self, x: Sequence[int]) -> int:
        return sum(wi * xi for wi, xi in zip(self.w, x))

    def graph(self) -> RootedSignedGraph:
        return to_rooted_signed_graph(self.A)
