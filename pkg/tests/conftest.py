import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from xdecomp.graph import Demands, WeightedGraph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def k4():
    return WeightedGraph.from_edges(4, [(a, b, 1) for a in range(4) for b in range(a + 1, 4)])


def c4():
    return WeightedGraph.from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)])


def dumbbell():
    """Two triangles with internal weight 10 and a unit bridge 2-3."""
    tri = [(0, 1, 10), (1, 2, 10), (0, 2, 10)]
    return WeightedGraph.from_edges(6, tri + [(u + 3, v + 3, w) for u, v, w in tri] + [(2, 3, 1)])


def two_k4():
    e = [(a, b, 1) for a in range(4) for b in range(a + 1, 4)]
    return WeightedGraph.from_edges(8, e + [(a + 4, b + 4, 1) for a, b, _ in e] + [(3, 4, 1)])


def path(n):
    return WeightedGraph.from_edges(n, [(i, i + 1, 1) for i in range(n - 1)])


def cycle(n):
    return WeightedGraph.from_edges(n, [(i, (i + 1) % n, 1) for i in range(n)])


def random_connected(rng, n, wmax=16, extra=None):
    edges = [(i, rng.randrange(i), rng.randint(1, wmax)) for i in range(1, n)]
    k = rng.randint(0, 2 * n) if extra is None else extra
    for _ in range(k):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.append((u, v, rng.randint(1, wmax)))
    return WeightedGraph.from_edges(n, edges)


def random_demands(rng, n, dmax=8, zero_p=0.25):
    while True:
        d = Demands(tuple(0 if rng.random() < zero_p else rng.randint(1, dmax) for _ in range(n)))
        if d.total > 0:
            return d


def random_tree(rng, n, wmax=16):
    return WeightedGraph.from_edges(n, [(i, rng.randrange(i), rng.randint(1, wmax)) for i in range(1, n)])


def corpus(count, nmin=2, nmax=10, seed=0):
    """Deterministic (graph, demands) pairs."""
    out = []
    for i in range(count):
        rng = random.Random(seed * 100003 + i)
        n = rng.randint(nmin, nmax)
        out.append((random_connected(rng, n), random_demands(rng, n)))
    return out


@st.composite
def graphs(draw, nmin=2, nmax=8, wmax=16, connected=True):
    n = draw(st.integers(nmin, nmax))
    edges = []
    if connected:
        for i in range(1, n):
            edges.append((i, draw(st.integers(0, i - 1)), draw(st.integers(1, wmax))))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(1, wmax))
    for u, v, w in draw(st.lists(pairs, max_size=2 * n)):
        if u != v:
            edges.append((u, v, w))
    return WeightedGraph.from_edges(n, edges)


@st.composite
def graph_and_demands(draw, nmin=2, nmax=8, connected=True):
    g = draw(graphs(nmin=nmin, nmax=nmax, connected=connected))
    vals = draw(st.lists(st.one_of(st.just(0), st.integers(1, 8)), min_size=g.n, max_size=g.n))
    if not any(vals):
        vals[0] = 1
    return g, Demands(tuple(vals))


@st.composite
def trees_and_demands(draw, nmax=10):
    n = draw(st.integers(2, nmax))
    edges = [(i, draw(st.integers(0, i - 1)), draw(st.integers(1, 16))) for i in range(1, n)]
    vals = draw(st.lists(st.integers(0, 8), min_size=n, max_size=n))
    if not any(vals):
        vals[0] = 1
    return WeightedGraph.from_edges(n, edges), Demands(tuple(vals))


@pytest.fixture
def tmp_files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


F = Fraction


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
