"""Acceptance suite: one test per primary criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines, or
``pytest -v`` (they are printed with output capture disabled).
"""
import random
import time

import pytest

from conftest import random_graph, random_instance
from oracles import max_subdet_leibniz, ocp_bruteforce
from tdmtw.decomposition import (
    KFreeDecomposition,
    TameOCPDecomposition,
    TDMDecomposition,
    compose_tdm,
    decompose_heuristic,
    exact_kfree_tw,
    extract_from_tdm,
    is_valid,
    kfree_heuristic,
    kfree_raw_width,
    tame_heuristic,
    uncontract_subdivision,
    validate,
    width,
)
from tdmtw.decomposition.types import TreeDecomposition
from tdmtw.formats import parse_decomposition, parse_graph, read
from tdmtw.fixtures import fixture_path
from tdmtw.grids import (
    _edge_index,
    make_cylindrical_grid,
    make_grid,
    make_parity_handle,
    make_parity_vortex,
    make_rooted_grid,
    find_even_grid_subdivision,
)
from tdmtw.ip_solver import brute_force_oracle, check_witness, solve_dp
from tdmtw.matrix import TwoNonzeroMatrix, check_dmod_bounds, to_rooted_signed_graph
from tdmtw.sgraph import ocp_exact, shift_at, subdivide_even_edges, verify_subdivision_model

CLAUSES = {
    "tree", "bags", "vertices", "cover", "edge", "connected",
    "free-vertices", "free-roots", "free-unique", "free-leaf",
    "protector-keys", "protector-subset", "adhesion",
    "protector-roots", "strong", "J-nodes", "J-subtree", "J-roots",
}


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail, started):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail}; {time.perf_counter() - started:.1f}s)"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return emit


# ---------------------------------------------------------------- 1

def test_criterion_1_oracle_equivalence(report):
    t0 = time.perf_counter()
    bad = []
    for seed in range(500):
        rng = random.Random(seed)
        inst = random_instance(rng, n_max=10, m_max=15, coef=3, d_max=3)
        dec = kfree_heuristic(inst.graph(), 2, seed)
        got = solve_dp(inst, dec)
        ref = brute_force_oracle(inst)
        if (got.status, got.objective) != (ref.status, ref.objective):
            bad.append(seed)
        elif got.x is not None and not check_witness(inst, got.x):
            bad.append(seed)
    report(1, "DP equals brute-force oracle on 500 instances", not bad and time.perf_counter() - t0 < 180,
           f"{500 - len(bad)}/500 agree" + (f", first mismatch seed {bad[0]}" if bad else ""), t0)


# ---------------------------------------------------------------- 2

def random_matrix(rng):
    n = rng.randint(2, 6)
    m = rng.randint(1, 6)
    nz = [c for c in range(-3, 4) if c]
    rows = []
    for _ in range(m):
        r = [0] * n
        a, b = rng.sample(range(n), 2)
        r[a], r[b] = rng.choice(nz), rng.choice(nz)
        rows.append(r)
    return TwoNonzeroMatrix.from_rows(rows)


def test_criterion_2_dmod_bounds(report):
    t0 = time.perf_counter()
    bad = []
    for seed in range(200):
        A = random_matrix(random.Random(seed))
        rep = check_dmod_bounds(A)
        g = to_rooted_signed_graph(A)
        delta = max_subdet_leibniz(A.rows)
        ocp = ocp_bruteforce(g.vertices, [(e.id, e.u, e.v, e.parity) for e in g.edges])
        norm = max(abs(x) for r in A.rows for x in r)
        k = len(g.roots)
        ok = (rep.delta, rep.ocp, rep.n_roots, rep.inf_norm) == (delta, ocp, k, norm)
        ok &= norm <= delta
        ok &= 2 ** k <= delta * delta
        ok &= 2 ** ocp <= delta
        ok &= delta <= 2 ** ocp * norm ** k
        ok &= rep.all_ok
        if not ok:
            bad.append(seed)
    report(2, "four subdeterminant inequalities on 200 matrices", not bad and time.perf_counter() - t0 < 120,
           f"{200 - len(bad)}/200 hold" + (f", first failure seed {bad[0]}" if bad else ""), t0)


# ---------------------------------------------------------------- 3

def image_cell_parities(host, k, model):
    guest, _ = make_grid(k)
    idx = _edge_index(guest)
    vid = lambda a, b: (a - 1) * k + (b - 1)  # noqa: E731
    out = []
    for i in range(1, k):
        for j in range(1, k):
            corners = [(i, j), (i, j + 1), (i + 1, j + 1), (i + 1, j)]
            total = 0
            for (a, b), (c, d) in zip(corners, corners[1:] + corners[:1]):
                x, y = vid(a, b), vid(c, d)
                total += sum(host.edge_by_id[h].parity for h in model.path_map[idx[(min(x, y), max(x, y))]])
            out.append(total % 2)
    return out


def test_criterion_3_even_grid(report):
    t0 = time.perf_counter()
    bad, branches = [], {"subgrid": 0, "construct": 0}
    for k in (2, 3):
        base, _ = make_grid(k * k)
        for seed in range(100):
            rng = random.Random(1000 * k + seed)
            host = base.with_parities({e.id: rng.randint(0, 1) for e in base.edges})
            res = find_even_grid_subdivision(host, k)
            branches[res.branch] += 1
            if not verify_subdivision_model(host, res.guest, res.model) or any(image_cell_parities(host, k, res.model)):
                bad.append((k, seed))
    report(3, "even grid subdivision for k=2,3 x 100 signings", not bad and time.perf_counter() - t0 < 120,
           f"{200 - len(bad)}/200 verified, branches {branches}", t0)


# ---------------------------------------------------------------- 4

def test_criterion_4_sandwich(report):
    t0 = time.perf_counter()
    bad = []
    for seed in range(50):
        g = random_graph(random.Random(seed), n_max=10, with_roots=True)
        assert g.roots
        kf = kfree_heuristic(g, 3, seed)
        leaves = {}
        for j in kf.base.leaves():
            part = kf.base.bags[j] & kf.free
            if part:
                leaves[j] = tame_heuristic(g.induced(part), 2, seed)
        tdm = compose_tdm(g, kf, leaves)
        leaf_w = max((width(d, g.induced(kf.base.bags[j] & kf.free)) for j, d in leaves.items()), default=0)
        ok = is_valid(tdm, g) and width(tdm, g) <= width(kf, g) + 1 + leaf_w

        hr = decompose_heuristic(g, 3, seed)
        kf2, tame2 = extract_from_tdm(g, hr.decomposition)
        ok &= is_valid(kf2, g) and is_valid(tame2, g)
        ok &= width(kf2, g) <= hr.width - 1 and kfree_raw_width(kf2) <= hr.width - 1
        ok &= width(tame2, g) <= hr.width
        if not ok:
            bad.append(seed)
    report(4, "compose/extract sandwich on 50 rooted graphs", not bad and time.perf_counter() - t0 < 300,
           f"{50 - len(bad)}/50 hold" + (f", first failure seed {bad[0]}" if bad else ""), t0)


# ---------------------------------------------------------------- 5

def test_criterion_5_rooted_grid_lower_bound(report):
    t0 = time.perf_counter()
    w4 = exact_kfree_tw(make_rooted_grid(4))
    zero = [make_rooted_grid(4).with_roots(()), make_parity_handle(1), make_grid(3)[0]]
    zero += [random_graph(random.Random(s), n_max=10, with_roots=False) for s in range(20)]
    zeros = [exact_kfree_tw(g) for g in zero]
    ok = w4 >= 1 and all(z == 0 for z in zeros) and time.perf_counter() - t0 < 120
    report(5, "exact K-free width of W4 >= 1, rootless graphs 0", ok,
           f"W4 -> {w4}, rootless max {max(zeros)} over {len(zeros)} graphs", t0)


# ---------------------------------------------------------------- 6

def test_criterion_6_shift_and_subdivision_invariance(report):
    t0 = time.perf_counter()
    shift_bad, trip_bad = [], []
    for seed in range(100):
        g = random_graph(random.Random(seed), n_max=10, with_roots=True)
        base = ocp_exact(g)
        if any(ocp_exact(shift_at(g, v)) != base for v in g.vertices):
            shift_bad.append(seed)
        g2, pm = subdivide_even_edges(g)
        d = tame_heuristic(g2, 4, seed)
        back = uncontract_subdivision(d, g, pm, g2)
        if not (is_valid(d, g2) and is_valid(back, g) and width(back, g) == width(d, g2)):
            trip_bad.append(seed)
    ok = not shift_bad and not trip_bad and time.perf_counter() - t0 < 180
    report(6, "OCP shift invariance and subdivision round trip on 100 graphs", ok,
           f"shift {100 - len(shift_bad)}/100, round trip {100 - len(trip_bad)}/100"
           + (f", first round-trip failure seed {trip_bad[0]}" if trip_bad else ""), t0)


# ---------------------------------------------------------------- 7

def test_criterion_7_generators(report):
    t0 = time.perf_counter()
    ok = True
    for k in range(1, 6):
        m = 4 * k
        base, _ = make_cylindrical_grid(k, m, parity=1)
        for g in (make_parity_handle(k), make_parity_vortex(k)):
            ok &= len(g.vertices) == k * m
            ok &= len(g.edges) == k * m + (k - 1) * m + k == len(base.edges) + k
            ok &= all(e.parity == 1 for e in g.edges) and not g.roots
    w8 = make_rooted_grid(8)
    ok &= len(w8.vertices) == 64 and len(w8.roots) == 8
    report(7, "handle/vortex counts for k=1..5 and W8 counts", ok and time.perf_counter() - t0 < 60,
           f"W8 has {len(w8.vertices)} vertices, {len(w8.roots)} roots", t0)


# ---------------------------------------------------------------- 8

def fixtures():
    out = []
    handle = read(fixture_path("handle3.graph"), parse_graph)
    out.append((handle, read(fixture_path("handle3.tdm"), parse_decomposition)))
    seed = 0
    while len(out) < 8:
        g = random_graph(random.Random(10_000 + seed), n_max=10, n_min=7, with_roots=True)
        seed += 1
        d = decompose_heuristic(g, 2, seed).decomposition
        if len(d.base.nodes) >= 3:
            out.append((g, d))
    return out


def _replace_bag(td, t, bag):
    bags = dict(td.bags)
    bags[t] = frozenset(bag)
    return TreeDecomposition(td.nodes, td.edges, bags)


def _rebuild(dec, base=None, prot=None, strong=None, free=None):
    base = base or dec.base
    if isinstance(dec, TreeDecomposition):
        return base
    if isinstance(dec, KFreeDecomposition):
        return KFreeDecomposition(base, dec.free if free is None else frozenset(free))
    if isinstance(dec, TameOCPDecomposition):
        return TameOCPDecomposition(base, dec.protectors if prot is None else prot)
    return TDMDecomposition(base, dec.protectors if prot is None else prot,
                            dec.strong if strong is None else frozenset(strong))


def corruptions(g, dec, rng):
    """Candidate single-field corruptions as (target clause, corrupted decomposition) pairs."""
    td = dec.base
    nodes = list(td.nodes)
    where = {v: {t for t in nodes if v in td.bags[t]} for v in g.vertices}
    adj = {t: set(ns) for t, ns in td.neighbors().items()}
    out = []
    if td.edges:
        e = rng.choice(td.edges)
        out.append(("tree", _rebuild(dec, TreeDecomposition(td.nodes, tuple(x for x in td.edges if x != e), td.bags))))
    t = rng.choice(nodes)
    out.append(("vertices", _rebuild(dec, _replace_bag(td, t, td.bags[t] | {max(g.vertices) + 7}))))
    single = [v for v in g.vertices if len(where[v]) == 1]
    if single:
        v = rng.choice(single)
        (t,) = where[v]
        out.append(("cover", _rebuild(dec, _replace_bag(td, t, td.bags[t] - {v}))))
    lonely = [e for e in g.edges if len(where[e.u] & where[e.v]) == 1]
    if lonely:
        e = rng.choice(lonely)
        (t,) = where[e.u] & where[e.v]
        out.append(("edge", _rebuild(dec, _replace_bag(td, t, td.bags[t] - {e.u}))))
    far = [(v, t) for v in g.vertices for t in nodes
           if t not in where[v] and not (adj[t] & where[v]) and where[v]]
    if far:
        v, t = rng.choice(far)
        out.append(("connected", _rebuild(dec, _replace_bag(td, t, td.bags[t] | {v}))))
    if isinstance(dec, KFreeDecomposition):
        if g.roots:
            out.append(("free-roots", _rebuild(dec, free=dec.free | {rng.choice(sorted(g.roots))})))
        out.append(("free-vertices", _rebuild(dec, free=dec.free | {max(g.vertices) + 3})))
        movable = [(v, s) for v in dec.free for (t,) in [tuple(where[v])] for s in adj[t]]
        if movable:
            v, s = rng.choice(movable)
            out.append(("free-unique", _rebuild(dec, _replace_bag(td, s, td.bags[s] | {v}))))
    if isinstance(dec, (TameOCPDecomposition, TDMDecomposition)):
        prot = dec.protectors
        t = rng.choice(nodes)
        out.append(("protector-keys", _rebuild(dec, prot={s: a for s, a in prot.items() if s != t})))
        outside = [(t, v) for t in nodes for v in g.vertices if v not in td.bags[t]]
        if outside:
            t, v = rng.choice(outside)
            out.append(("protector-subset", _rebuild(dec, prot={**prot, t: prot[t] | {v}})))
        wide = [(a, b) for a, b in td.edges if len(td.bags[a] & td.bags[b]) >= 2]
        wide += [(b, a) for a, b in wide]
        if wide:
            a, b = rng.choice(wide)
            out.append(("adhesion", _rebuild(dec, prot={**prot, a: prot[a] - td.bags[b]})))
    if isinstance(dec, TDMDecomposition):
        prot = dec.protectors
        rooted = [(t, r) for t in nodes for r in td.bags[t] & g.roots]
        if rooted:
            t, r = rng.choice(rooted)
            out.append(("protector-roots", _rebuild(dec, prot={**prot, t: prot[t] - {r}})))
        out.append(("J-nodes", _rebuild(dec, strong=dec.strong | {max(nodes) + 5})))
        J = dec.strong
        away = [t for t in nodes if t not in J and not (adj[t] & J)]
        if J and away:
            out.append(("J-subtree", _rebuild(dec, strong=J | {rng.choice(away)})))
        if g.roots:
            out.append(("J-roots", _rebuild(dec, strong=frozenset())))
        border = [t for t in nodes if t not in J and adj[t] & J
                  and any(td.bags[t] & td.bags[s] - prot[t] for s in adj[t])]
        if border:
            out.append(("strong", _rebuild(dec, strong=J | {rng.choice(border)})))
    return out


def test_criterion_8_fuzz_rejection(report):
    t0 = time.perf_counter()
    base = fixtures()
    per_kind = {}
    for g, d in base:
        assert is_valid(d, g)
    for kind in ("tree", "kfree", "tocp", "tdm"):
        rng = random.Random(kind)
        rejected, targeted, total = 0, 0, 0
        while total < 100:
            g, d = base[rng.randrange(len(base))]
            if kind == "kfree":
                dec, _ = extract_from_tdm(g, d)
            elif kind == "tocp":
                dec = d.tame()
            elif kind == "tree":
                dec = d.base
            else:
                dec = d
            assert is_valid(dec, g)
            target, bad = rng.choice(corruptions(g, dec, rng))
            total += 1
            found = {v.clause for v in validate(bad, g)}
            if found and found <= CLAUSES:
                rejected += 1
                targeted += target in found
        per_kind[kind] = (rejected, targeted)
    ok = all(r == 100 for r, _ in per_kind.values()) and time.perf_counter() - t0 < 60
    detail = ", ".join(f"{k} {r}/100 rejected ({t} on the targeted clause)" for k, (r, t) in per_kind.items())
    report(8, "single-field corruptions rejected with a named clause", ok, detail, t0)
