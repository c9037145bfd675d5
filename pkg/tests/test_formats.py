import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import instances, signed_graphs
from tdmtw import formats
from tdmtw.decomposition import decompose_heuristic, kfree_heuristic
from tdmtw.formats import FormatError
from tdmtw.grids import find_even_grid_subdivision, find_even_rooted_grid_minor, make_cylindrical_grid, make_grid
from tdmtw.grids import make_rooted_grid
from tdmtw.ip_solver import INFEASIBLE, OPTIMAL, SolveResult, brute_force_oracle
from tdmtw.sgraph import RootedSignedGraph, subdivide_even_edges


@given(signed_graphs(max_n=8, max_m=12))
def test_graph_round_trip(g):
    assert formats.parse_graph(formats.write_graph(g)) == g


def test_graph_with_sparse_ids_and_comments():
    g = RootedSignedGraph.build([3, 7, 9], [(3, 7, 1), (7, 9, 0)], roots={9})
    text = formats.write_graph(g)
    assert "vertices 3 7 9" in text
    assert formats.parse_graph("# header\n" + text.replace("\n", "  # trailing\n", 1)) == g


@pytest.mark.parametrize("text", [
    "",
    "graph 2\nedge 0 0 0 1\n",
    "graph 2\nedge 0 0 1\n",
    "graph 2\nedge 0 0 5 1\n",
    "graph 2\nvertices 0\n",
    "graph 2\nedge 0 0 1 x\n",
    "graph 2\nfoo 1\n",
    "grahp 2\n",
])
def test_graph_rejects(text):
    with pytest.raises(FormatError):
        formats.parse_graph(text)


@given(instances(n_max=6, m_max=8))
def test_ip_round_trip(inst):
    back = formats.parse_ip(formats.write_ip(inst))
    assert (back.A, back.b, back.w, back.lower, back.upper) == (inst.A, inst.b, inst.w, inst.lower, inst.upper)


@pytest.mark.parametrize("text", [
    "ip 1 2\nrow 0 0 1 1 1 1\nw 1 1\nl 0 0\n",
    "ip 1 2\nrow 0 0 1 1 1 1\nrow 0 0 1 1 1 1\nw 1 1\nl 0 0\nu 1 1\n",
    "ip 2 2\nrow 0 0 1 1 1 1\nw 1 1\nl 0 0\nu 1 1\n",
    "ip 1 2\nrow 0 0 1 1 1 1\nw 1\nl 0 0\nu 1 1\n",
    "ip 1 2\nrow 0 0 1 0 1 1\nw 1 1\nl 0 0\nu 1 1\n",
    "ip 1 2\nrow 0 0 1 1 1 1\nw 1 1\nl 0 2\nu 1 1\n",
])
def test_ip_rejects(text):
    with pytest.raises(FormatError):
        formats.parse_ip(text)


@given(signed_graphs(max_n=8, max_m=12), st.integers(0, 50))
def test_decomposition_round_trip(g, seed):
    d = decompose_heuristic(g, 2, seed).decomposition
    for dec in (d, d.tame(), d.base, kfree_heuristic(g, 2, seed)):
        assert formats.parse_decomposition(formats.write_decomposition(dec)) == dec


@pytest.mark.parametrize("text", [
    "kind weird\ntree 1\nbag 0 0\n",
    "kind tree\ntree 2\nbag 0 0\n",
    "kind tree\ntree 1\nbag 0 0\nbag 0 1\n",
    "kind tree\ntree 1\nbag 0 0\nprot 0 0\n",
    "kind tree\ntree 1\nbag 0 0\nJ 0\n",
    "kind tocp\ntree 1\nbag 0 0\nL 0\n",
    "kind tree\ntree 2\nbag 0 0\nbag 1 0\ntedge 0\n",
])
def test_decomposition_rejects(text):
    with pytest.raises(FormatError):
        formats.parse_decomposition(text)


@given(instances(n_max=5, m_max=6))
def test_result_round_trip(inst):
    res = brute_force_oracle(inst)
    assert formats.parse_result(formats.write_result(res)) == res


def test_result_rejects():
    with pytest.raises(FormatError):
        formats.parse_result("objective 3\n")
    with pytest.raises(FormatError):
        formats.parse_result("status Optimal\nx 0 1\n")
    with pytest.raises(FormatError):
        formats.parse_result("status Optimal\nobjective 1\nx 1 1\n")
    assert formats.parse_result("status Infeasible\n") == SolveResult(INFEASIBLE)
    assert formats.parse_result("status Optimal\nobjective -4\nx 0 -2\n") == SolveResult(OPTIMAL, -4, (-2,))


def test_model_round_trips():
    rng = random.Random(0)
    g, _ = make_grid(9)
    g = g.with_parities({e.id: rng.randint(0, 1) for e in g.edges})
    s = find_even_grid_subdivision(g, 3).model
    assert formats.parse_subdivision_model(formats.write_subdivision_model(s)) == s
    host = make_rooted_grid(4).with_parities({e.id: rng.randint(0, 1) for e in make_rooted_grid(4).edges})
    m, _ = find_even_rooted_grid_minor(host, 2)
    assert formats.parse_minor_model(formats.write_minor_model(m)) == m


@given(signed_graphs(max_n=8, max_m=12))
def test_path_map_round_trip(g):
    _, pm = subdivide_even_edges(g)
    assert formats.parse_path_map(formats.write_path_map(pm)) == pm


def test_coords_round_trip():
    for _, c in (make_grid(3), make_cylindrical_grid(2, 5)):
        assert formats.parse_coords(formats.write_coords(c)) == c
    with pytest.raises(FormatError):
        formats.parse_coords("coords torus 2 2\n")
    with pytest.raises(FormatError):
        formats.parse_coords("coords grid 1 1\nat 0 1\n")


def test_read_missing_file(tmp_path):
    with pytest.raises(FormatError, match="cannot read"):
        formats.read(tmp_path / "nope.graph", formats.parse_graph)
