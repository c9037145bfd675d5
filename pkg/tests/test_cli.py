import pytest

from tdmtw import formats
from tdmtw.cli import main
from tdmtw.decomposition import width
from tdmtw.fixtures import fixture_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_rooted_grid_k2(capsys):
    code, out, _ = run(capsys, "gen", "--family", "rooted-grid", "--k", "2")
    assert code == 0
    g = formats.parse_graph(out)
    assert (len(g.vertices), len(g.edges), len(g.roots)) == (4, 4, 2)


def test_gen_coords_and_signings(capsys, tmp_path):
    coords = tmp_path / "c.txt"
    code, out, _ = run(capsys, "gen", "--family", "cylinder", "--k", "2", "--m", "3", "--coords", str(coords))
    assert code == 0 and len(formats.parse_graph(out).edges) == 9
    assert formats.parse_coords(coords.read_text()).shape == (2, 3)
    _, out, _ = run(capsys, "gen", "--family", "grid", "--k", "3", "--signing", "one")
    assert all(e.parity == 1 for e in formats.parse_graph(out).edges)
    _, a, _ = run(capsys, "gen", "--family", "grid", "--k", "3", "--signing", "random", "--seed", "4")
    _, b, _ = run(capsys, "gen", "--family", "grid", "--k", "3", "--signing", "random", "--seed", "4")
    assert a == b
    code, _, err = run(capsys, "gen", "--family", "handle", "--k", "2", "--coords", str(coords))
    assert code == 1 and "coordinate" in err


def test_solve_matches_oracle_on_fixture(capsys):
    ip = str(fixture_path("two_var.ip"))
    code1, solved, _ = run(capsys, "solve", "-i", ip, "-d", str(fixture_path("two_var.kfree")))
    code2, oracle, _ = run(capsys, "oracle", "-i", ip)
    code3, heur, _ = run(capsys, "solve", "-i", ip)
    assert code1 == code2 == code3 == 0
    objs = {formats.parse_result(t).objective for t in (solved, oracle, heur)}
    assert objs == {1}


def test_solve_infeasible_exit_code(capsys, tmp_path):
    p = tmp_path / "bad.ip"
    p.write_text("ip 1 2\nrow 0 0 2 1 2 1\nw 1 1\nl 1 1\nu 2 2\n")
    code, out, _ = run(capsys, "solve", "-i", str(p))
    assert code == 2 and formats.parse_result(out).status == "Infeasible"
    assert run(capsys, "oracle", "-i", str(p))[0] == 2


def test_handle_pipeline(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "--family", "handle", "--k", "3")
    assert code == 0
    assert formats.parse_graph(out) == formats.read(fixture_path("handle3.graph"), formats.parse_graph)
    gpath = tmp_path / "h.graph"
    gpath.write_text(out)
    dec = str(fixture_path("handle3.tdm"))
    code, out, _ = run(capsys, "validate", "-g", str(gpath), "-d", dec)
    assert code == 0 and out.strip() == "OK"
    code, out, _ = run(capsys, "width", "-g", str(gpath), "-d", dec)
    g = formats.parse_graph(gpath.read_text())
    assert code == 0 and int(out) == width(formats.read(dec, formats.parse_decomposition), g)


def test_decompose_then_validate(capsys, tmp_path):
    ip = str(fixture_path("two_var.ip"))
    for kind in formats.KINDS:
        out_path = tmp_path / f"d.{kind}"
        code, _, _ = run(capsys, "decompose", "-i", ip, "--kind", kind, "--budget", "2", "-o", str(out_path))
        assert code == 0
        text = out_path.read_text()
        assert "# width" in text
        code, out, _ = run(capsys, "validate", "-i", ip, "-d", str(out_path))
        assert code == 0 and out.strip() == "OK"


def test_validate_reports_violations(capsys, tmp_path):
    p = tmp_path / "bad.tree"
    p.write_text("kind tree\ntree 1\nbag 0 0\n")
    code, out, _ = run(capsys, "validate", "-i", str(fixture_path("two_var.ip")), "-d", str(p))
    assert code == 2 and "cover" in out


def test_check_dmod(capsys):
    code, out, _ = run(capsys, "check-dmod", "-i", str(fixture_path("two_var.ip")))
    assert code == 0
    assert len(out.strip().splitlines()) == 5


def test_find_even_grid(capsys, tmp_path):
    gpath = tmp_path / "g.graph"
    code, out, _ = run(capsys, "gen", "--family", "grid", "--k", "9", "--signing", "random", "--seed", "1")
    gpath.write_text(out)
    code, out, _ = run(capsys, "find-even-grid", "-g", str(gpath), "--k", "3")
    assert code == 0 and "# verdict OK" in out
    formats.parse_subdivision_model(out)
    code, out, _ = run(capsys, "gen", "--family", "rooted-grid", "--k", "4")
    gpath.write_text(out)
    code, out, _ = run(capsys, "find-even-grid", "-g", str(gpath), "--k", "2", "--rooted")
    assert code == 0 and "# verdict OK" in out
    formats.parse_minor_model(out)


def test_translate(capsys, tmp_path):
    gpath = tmp_path / "g.graph"
    gpath.write_text("graph 3\nedge 0 0 1 0\nedge 1 1 2 1\n")
    pm = tmp_path / "pm.txt"
    code, out, _ = run(capsys, "translate", "-g", str(gpath), "--subdivide-even", "--path-map", str(pm))
    assert code == 0
    assert len(formats.parse_graph(out).vertices) == 4
    assert formats.parse_path_map(pm.read_text()) == {0: (3,)}
    code, out, _ = run(capsys, "translate", "-g", str(gpath), "--subdivide-even")
    assert "# path 0 3" in out
    assert run(capsys, "translate", "-g", str(gpath))[0] == 1


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["solve"],
    ["gen", "--family", "torus", "--k", "2"],
    ["gen", "--family", "grid", "--k", "two"],
])
def test_bad_flags_exit_one(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1
    assert "usage" in capsys.readouterr().err


def test_semantic_error_exit_one(capsys, tmp_path):
    assert run(capsys, "solve", "-i", str(tmp_path / "missing.ip"))[0] == 1
    assert run(capsys, "gen", "--family", "cylinder", "--k", "2")[0] == 1
