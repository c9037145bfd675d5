import random
import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from tdmtw.matrix import IPInstance, TwoNonzeroMatrix  # noqa: E402
from tdmtw.sgraph import RootedSignedGraph  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def signed_graphs(draw, min_n=1, max_n=7, max_m=10, roots=True):
    n = draw(st.integers(min_n, max_n))
    if n < 2:
        edges = []
    else:
        pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
        raw = draw(st.lists(st.tuples(pairs, st.integers(0, 1)), max_size=max_m))
        edges = [(u, v, p) for (u, v), p in raw]
    K = draw(st.sets(st.integers(0, n - 1), max_size=n)) if roots else set()
    return RootedSignedGraph.build(range(n), edges, K)


def random_graph(rng: random.Random, n_max=10, with_roots=True, n_min=2):
    n = rng.randint(n_min, n_max)
    m = rng.randint(max(0, n - 1), min(2 * n, n * (n - 1) // 2 + 2))
    edges = []
    for _ in range(m):
        u, v = rng.sample(range(n), 2)
        edges.append((u, v, rng.randint(0, 1)))
    K = rng.sample(range(n), rng.randint(1, max(1, n // 3))) if with_roots else []
    return RootedSignedGraph.build(range(n), edges, K)


def random_instance(rng: random.Random, n_max=10, m_max=15, coef=3, d_max=3):
    n = rng.randint(1, n_max)
    m = rng.randint(0, m_max) if n > 1 else 0
    nz = [c for c in range(-coef, coef + 1) if c]
    rows = []
    for _ in range(m):
        a, b = rng.sample(range(n), 2)
        rows.append((a, rng.choice(nz), b, rng.choice(nz)))
    A = TwoNonzeroMatrix.from_sparse(n, rows)
    lower = [rng.randint(-coef, coef) for _ in range(n)]
    upper = [lo + rng.randint(0, d_max) for lo in lower]
    b = [rng.randint(-2 * coef, 3 * coef) for _ in rows]
    w = [rng.randint(-coef, coef) for _ in range(n)]
    return IPInstance(A, b, w, lower, upper)


@st.composite
def instances(draw, n_max=6, m_max=8):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_instance(random.Random(seed), n_max=n_max, m_max=m_max)
