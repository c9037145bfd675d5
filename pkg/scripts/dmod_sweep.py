"""How tight are the subdeterminant bounds on random two-nonzero matrices?

For each of the four inequalities, counts how often it holds with equality
and reports the largest observed ratio of right-hand to left-hand side.
"""
import argparse
import random
from collections import Counter

from tdmtw.matrix import TwoNonzeroMatrix, check_dmod_bounds


def random_matrix(rng, size, coef):
    n = rng.randint(2, size)
    nz = [c for c in range(-coef, coef + 1) if c]
    rows = []
    for _ in range(rng.randint(1, size)):
        r = [0] * n
        a, b = rng.sample(range(n), 2)
        r[a], r[b] = rng.choice(nz), rng.choice(nz)
        rows.append(r)
    return TwoNonzeroMatrix.from_rows(rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--size", type=int, default=6)
    ap.add_argument("--coef", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    tight, fails = Counter(), Counter()
    deltas = Counter()
    for i in range(args.count):
        rep = check_dmod_bounds(random_matrix(random.Random(args.seed * 7919 + i), args.size, args.coef))
        deltas[rep.delta] += 1
        checks = {
            "norm <= delta": (rep.inf_norm, rep.delta),
            "2^|K| <= delta^2": (2 ** rep.n_roots, rep.delta ** 2),
            "2^ocp <= delta": (2 ** rep.ocp, rep.delta),
            "delta <= 2^ocp norm^|K|": (rep.delta, rep.converse_bound),
        }
        for name, (lhs, rhs) in checks.items():
            tight[name] += lhs == rhs
            fails[name] += lhs > rhs
    for name in tight:
        print(f"{name:<26} tight {tight[name]:>5}/{args.count}  violated {fails[name]}")
    print("delta histogram:", dict(sorted(deltas.items())))


if __name__ == "__main__":
    main()
