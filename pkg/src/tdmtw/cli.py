"""Command line interface: ``tdmtw <verb> ...``.

Exit codes: 0 for success or an optimal solve, 2 for a negative verdict
(infeasible program, invalid decomposition, failed check), 1 for errors.
"""
from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path

from . import formats
from .decomposition import (
    decompose_heuristic,
    extract_from_tdm,
    kfree_heuristic,
    tame_heuristic,
    validate,
    width,
)
from .decomposition.heuristic import tree_decompositions
from .grids import (
    find_even_grid_subdivision,
    find_even_rooted_grid_minor,
    make_cylindrical_grid,
    make_grid,
    make_parity_handle,
    make_parity_vortex,
    make_rooted_grid,
)
from .ip_solver import OPTIMAL, brute_force_oracle, solve_dp
from .matrix import check_dmod_bounds
from .sgraph import (
    minor_model_violations,
    subdivide_even_edges,
    subdivision_model_violations,
)

log = logging.getLogger("tdmtw")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _graph_arg(args):
    if getattr(args, "graph", None):
        return formats.read(args.graph, formats.parse_graph)
    if getattr(args, "instance", None):
        return formats.read(args.instance, formats.parse_ip).graph()
    raise ValueError("need a graph (-g) or an instance (-i)")


# ---------------------------------------------------------------- verbs

def cmd_solve(args) -> int:
    inst = formats.read(args.instance, formats.parse_ip)
    if args.decomposition:
        dec = formats.read(args.decomposition, formats.parse_decomposition)
        if formats.kind_of(dec) != "kfree":
            raise ValueError("solve needs a kfree decomposition")
    else:
        dec = kfree_heuristic(inst.graph(), args.budget, args.seed)
    res = solve_dp(inst, dec)
    _emit(formats.write_result(res), args.output)
    return 0 if res.status == OPTIMAL else 2


def cmd_oracle(args) -> int:
    inst = formats.read(args.instance, formats.parse_ip)
    res = brute_force_oracle(inst)
    _emit(formats.write_result(res), args.output)
    return 0 if res.status == OPTIMAL else 2


def cmd_decompose(args) -> int:
    g = _graph_arg(args)
    exhausted = False
    if args.kind == "tdm":
        hr = decompose_heuristic(g, args.budget, args.seed)
        dec, exhausted = hr.decomposition, hr.budget_exhausted
    elif args.kind == "kfree":
        dec = kfree_heuristic(g, args.budget, args.seed)
    elif args.kind == "tocp":
        dec = tame_heuristic(g, args.budget, args.seed)
    else:
        dec = min(tree_decompositions(g, max(args.budget, 1), args.seed), key=lambda d: width(d, g))
    text = formats.write_decomposition(dec) + f"# width {width(dec, g)}\n"
    if exhausted:
        text += "# budget exhausted\n"
    _emit(text, args.output)
    return 0


def cmd_validate(args) -> int:
    g = _graph_arg(args)
    dec = formats.read(args.decomposition, formats.parse_decomposition)
    problems = validate(dec, g)
    if not problems:
        print("OK")
        return 0
    for p in problems:
        print(p)
    return 2


def cmd_width(args) -> int:
    g = _graph_arg(args)
    dec = formats.read(args.decomposition, formats.parse_decomposition)
    print(width(dec, g))
    return 0


def cmd_gen(args) -> int:
    coords = None
    fam = args.family
    if fam == "grid":
        g, coords = make_grid(args.k)
    elif fam == "rooted-grid":
        g = make_rooted_grid(args.k)
    elif fam == "handle":
        g = make_parity_handle(args.k)
    elif fam == "vortex":
        g = make_parity_vortex(args.k)
    else:
        if args.m is None:
            raise ValueError("cylinder needs --m")
        g, coords = make_cylindrical_grid(args.k, args.m)
    if args.signing == "one":
        g = g.all_parity(1)
    elif args.signing == "random":
        rng = random.Random(args.seed)
        g = g.with_parities({e.id: rng.randint(0, 1) for e in g.edges})
    _emit(formats.write_graph(g), args.output)
    if args.coords:
        if coords is None:
            raise ValueError(f"family {fam} has no coordinate sidecar")
        Path(args.coords).write_text(formats.write_coords(coords))
    return 0


def cmd_check_dmod(args) -> int:
    inst = formats.read(args.instance, formats.parse_ip)
    rep = check_dmod_bounds(inst.A)
    print("\n".join(rep.lines()))
    return 0 if rep.all_ok else 2


def cmd_find_even_grid(args) -> int:
    g = formats.read(args.graph, formats.parse_graph)
    if args.rooted:
        model, guest = find_even_rooted_grid_minor(g, args.k)
        problems = minor_model_violations(g, guest, model, rooted=True)
        text = formats.write_minor_model(model)
    else:
        res = find_even_grid_subdivision(g, args.k)
        problems = subdivision_model_violations(g, res.guest, res.model)
        text = formats.write_subdivision_model(res.model) + f"# branch {res.branch}\n"
    text += "# verdict " + ("OK" if not problems else "FAIL: " + "; ".join(problems)) + "\n"
    _emit(text, args.output)
    return 0 if not problems else 2


def cmd_translate(args) -> int:
    g = formats.read(args.graph, formats.parse_graph)
    if not args.subdivide_even:
        raise ValueError("no translation selected (use --subdivide-even)")
    g2, path_map = subdivide_even_edges(g)
    _emit(formats.write_graph(g2), args.output)
    pm = formats.write_path_map(path_map)
    if args.path_map:
        Path(args.path_map).write_text(pm)
    else:
        sys.stdout.write("".join(f"# {line}\n" for line in pm.splitlines()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tdmtw", description="Two-nonzero integer programs via signed-graph decompositions.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        return sp

    sp = add("solve", cmd_solve, "solve an IP with the decomposition dynamic program")
    sp.add_argument("-i", "--instance", required=True)
    sp.add_argument("-d", "--decomposition", help="kfree decomposition (default: heuristic)")
    sp.add_argument("--budget", type=int, default=6)

    sp = add("oracle", cmd_oracle, "solve an IP by exhaustive enumeration")
    sp.add_argument("-i", "--instance", required=True)

    sp = add("decompose", cmd_decompose, "build a decomposition heuristically")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("-i", "--instance")
    src.add_argument("-g", "--graph")
    sp.add_argument("--kind", choices=formats.KINDS, default="tdm")
    sp.add_argument("--budget", type=int, default=6)

    for name, fn, help_ in (("validate", cmd_validate, "check every clause of a decomposition"),
                            ("width", cmd_width, "width of a valid decomposition")):
        sp = add(name, fn, help_)
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("-g", "--graph")
        src.add_argument("-i", "--instance")
        sp.add_argument("-d", "--decomposition", required=True)

    sp = add("gen", cmd_gen, "generate a grid family member")
    sp.add_argument("--family", required=True, choices=["grid", "rooted-grid", "handle", "vortex", "cylinder"])
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--m", type=int)
    sp.add_argument("--signing", choices=["default", "one", "random"], default="default")
    sp.add_argument("--coords", help="write the coordinate sidecar here")

    sp = add("check-dmod", cmd_check_dmod, "check the subdeterminant bounds of an instance matrix")
    sp.add_argument("-i", "--instance", required=True)

    sp = add("find-even-grid", cmd_find_even_grid, "find an even k x k grid in a signed k^2 x k^2 grid")
    sp.add_argument("-g", "--graph", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--rooted", action="store_true", help="rooted minor model (host rooted at row 1)")

    sp = add("translate", cmd_translate, "graph transformations")
    sp.add_argument("-g", "--graph", required=True)
    sp.add_argument("--subdivide-even", action="store_true")
    sp.add_argument("--path-map", help="write the path map here (default: comments on stdout)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
