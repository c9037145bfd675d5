"""Widths of heuristic decompositions against exact lower-level quantities.

On random rooted graphs: heuristic TDM width versus exact K-free width + 1
and the tame width of the same tree.  On the grid families: how the
heuristic widths grow with the order.
"""
import argparse
import random
import time

from tdmtw.decomposition import (
    decompose_heuristic,
    exact_kfree_tw,
    extract_from_tdm,
    kfree_heuristic,
    tame_heuristic,
    width,
)
from tdmtw.grids import make_parity_handle, make_parity_vortex, make_rooted_grid
from tdmtw.sgraph import RootedSignedGraph, ocp_exact


def random_graph(rng, n):
    m = rng.randint(n - 1, 2 * n)
    edges = [(*rng.sample(range(n), 2), rng.randint(0, 1)) for _ in range(m)]
    return RootedSignedGraph.build(range(n), edges, rng.sample(range(n), rng.randint(1, max(1, n // 3))))


def random_part(args):
    print(f"{'n':>3} {'tdm':>4} {'tw_K+1':>6} {'tame':>5} {'ocp':>4} {'gap':>4}")
    gaps = []
    for i in range(args.count):
        rng = random.Random(args.seed * 31337 + i)
        g = random_graph(rng, rng.randint(4, args.n_max))
        hr = decompose_heuristic(g, args.budget, i)
        _, tame = extract_from_tdm(g, hr.decomposition)
        lower = exact_kfree_tw(g) + 1
        gaps.append(hr.width - lower)
        print(f"{len(g.vertices):>3} {hr.width:>4} {lower:>6} {width(tame, g):>5} {ocp_exact(g):>4} {gaps[-1]:>4}")
    print(f"mean gap between heuristic TDM width and exact tw_K + 1: {sum(gaps) / len(gaps):.2f}")


def family_part(args):
    print(f"{'family':<8} {'k':>2} {'|V|':>4} {'tdm':>4} {'tame':>5} {'kfree':>6} {'secs':>6}")
    for name, make in (("handle", make_parity_handle), ("vortex", make_parity_vortex), ("rooted", make_rooted_grid)):
        for k in range(1, args.k_max + 1):
            g = make(k)
            t = time.perf_counter()
            tdm = decompose_heuristic(g, args.budget, args.seed).width
            tame = width(tame_heuristic(g, args.budget, args.seed), g)
            kf = width(kfree_heuristic(g, args.budget, args.seed), g)
            print(f"{name:<8} {k:>2} {len(g.vertices):>4} {tdm:>4} {tame:>5} {kf:>6} {time.perf_counter() - t:>6.2f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=30)
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--k-max", type=int, default=3)
    ap.add_argument("--budget", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--part", choices=["random", "families", "both"], default="both")
    args = ap.parse_args()
    if args.part in ("random", "both"):
        random_part(args)
    if args.part in ("families", "both"):
        family_part(args)


if __name__ == "__main__":
    main()
