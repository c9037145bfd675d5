"""Compare the decomposition DP with exhaustive search on random instances.

Prints one line per instance size bucket: count, agreement, and mean times.
"""
import argparse
import random
import statistics
import time
from collections import defaultdict

from tdmtw.decomposition import kfree_heuristic, width
from tdmtw.ip_solver import brute_force_oracle, solve_dp
from tdmtw.matrix import IPInstance, TwoNonzeroMatrix


def random_instance(rng, n_max, m_max, coef, d_max):
    n = rng.randint(2, n_max)
    nz = [c for c in range(-coef, coef + 1) if c]
    rows = []
    for _ in range(rng.randint(0, m_max)):
        a, b = rng.sample(range(n), 2)
        rows.append((a, rng.choice(nz), b, rng.choice(nz)))
    lower = [rng.randint(-coef, coef) for _ in range(n)]
    upper = [lo + rng.randint(0, d_max) for lo in lower]
    return IPInstance(TwoNonzeroMatrix.from_sparse(n, rows),
                      [rng.randint(-2 * coef, 3 * coef) for _ in rows],
                      [rng.randint(-coef, coef) for _ in range(n)], lower, upper)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--m-max", type=int, default=15)
    ap.add_argument("--coef", type=int, default=3)
    ap.add_argument("--d-max", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    buckets = defaultdict(lambda: {"agree": 0, "total": 0, "dp": [], "oracle": [], "width": []})
    for i in range(args.count):
        rng = random.Random(args.seed * 1_000_003 + i)
        inst = random_instance(rng, args.n_max, args.m_max, args.coef, args.d_max)
        b = buckets[inst.n]
        t = time.perf_counter()
        dec = kfree_heuristic(inst.graph(), 2, i)
        got = solve_dp(inst, dec)
        b["dp"].append(time.perf_counter() - t)
        t = time.perf_counter()
        ref = brute_force_oracle(inst)
        b["oracle"].append(time.perf_counter() - t)
        b["width"].append(width(dec, inst.graph()))
        b["total"] += 1
        b["agree"] += (got.status, got.objective) == (ref.status, ref.objective)

    print(f"{'n':>3} {'count':>6} {'agree':>6} {'kfree w':>8} {'dp ms':>8} {'oracle ms':>10}")
    for n in sorted(buckets):
        b = buckets[n]
        print(f"{n:>3} {b['total']:>6} {b['agree']:>6} {statistics.mean(b['width']):>8.2f} "
              f"{1000 * statistics.mean(b['dp']):>8.2f} {1000 * statistics.mean(b['oracle']):>10.2f}")
    total = sum(b["total"] for b in buckets.values())
    agree = sum(b["agree"] for b in buckets.values())
    print(f"agreement {agree}/{total}")


if __name__ == "__main__":
    main()
