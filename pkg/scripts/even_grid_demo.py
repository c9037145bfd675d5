"""Find even k x k grids in randomly signed k^2 x k^2 grids.

Reports which branch of the construction fired and the total length of the
host paths used, then prints the model for one signing.
"""
import argparse
import random
from collections import Counter

from tdmtw.formats import write_subdivision_model
from tdmtw.grids import even_grid_image_cells, find_even_grid_subdivision, make_grid
from tdmtw.sgraph import verify_subdivision_model


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--odd-prob", type=float, default=0.5, help="chance that an edge is odd")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--show", action="store_true", help="print the model of the first signing")
    args = ap.parse_args()

    base, _ = make_grid(args.k * args.k)
    branches, lengths, verified = Counter(), [], 0
    for i in range(args.count):
        rng = random.Random(args.seed * 104729 + i)
        host = base.with_parities({e.id: int(rng.random() < args.odd_prob) for e in base.edges})
        res = find_even_grid_subdivision(host, args.k)
        branches[res.branch] += 1
        lengths.append(sum(len(p) for p in res.model.path_map.values()))
        ok = verify_subdivision_model(host, res.guest, res.model)
        verified += ok and not any(even_grid_image_cells(host, args.k, res.model))
        if args.show and i == 0:
            print(write_subdivision_model(res.model), end="")
    print(f"k={args.k}: {verified}/{args.count} verified, branches {dict(branches)}, "
          f"host edges used min {min(lengths)} max {max(lengths)}")


if __name__ == "__main__":
    main()
