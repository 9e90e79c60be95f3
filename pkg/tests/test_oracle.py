from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given

from conftest import c4, dumbbell, graph_and_demands, k4
from xdecomp.errors import TooLarge
from xdecomp.graph import Demands, WeightedGraph
from xdecomp.oracle import (
    brute_most_balanced,
    brute_sparsest_cut,
    brute_verify_decomposition,
    iter_cuts,
)


def _naive_subsets(n):
    for k in range(1, n + 1):
        for s in combinations(range(n), k):
            yield s


def _naive_sparsest(g, d):
    best = None
    for s in _naive_subsets(g.n):
        ss = set(s)
        din = sum(d.values[v] for v in s)
        if not 0 < din < d.total:
            continue
        w = sum((w for u, v, w in g.edges if (u in ss) != (v in ss)), 0)
        val = Fraction(w) / min(din, d.total - din)
        if best is None or val < best:
            best = val
    return best


def _naive_most_balanced_demand(g, d, psi_star):
    best = 0
    for s in _naive_subsets(g.n):
        ss = set(s)
        din = sum(d.values[v] for v in s)
        if din <= 0 or 2 * din > d.total:
            continue
        w = sum((w for u, v, w in g.edges if (u in ss) != (v in ss)), 0)
        if w <= psi_star * din:
            best = max(best, din)
    return best


def test_sparsest_examples():
    assert brute_sparsest_cut(c4(), Demands.uniform(4)).best_value == 1
    assert brute_sparsest_cut(WeightedGraph.from_edges(2, [(0, 1, 5)]), Demands.uniform(2)).best_value == 5
    star = WeightedGraph.from_edges(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
    assert brute_sparsest_cut(star, Demands.uniform(4)).best_value == 1
    res = brute_sparsest_cut(dumbbell(), Demands.uniform(6))
    assert res.best_value == Fraction(1, 3) and res.best_set == {0, 1, 2}
    assert res.enumerated == 63


def test_sparsest_without_proper_cut():
    res = brute_sparsest_cut(k4(), Demands((0, 0, 5, 0)))
    assert res.best_value is None and res.best_set == frozenset()


def test_most_balanced_examples():
    assert brute_most_balanced(k4(), Demands.uniform(4), 1) == frozenset()
    assert brute_most_balanced(dumbbell(), Demands.uniform(6), Fraction(1, 2)) == {0, 1, 2}
    two = WeightedGraph.from_edges(5, [(0, 1, 1), (2, 3, 1), (3, 4, 1)])
    assert brute_most_balanced(two, Demands.uniform(5), Fraction(1, 100)) == {0, 1}


def test_cap():
    with pytest.raises(TooLarge):
        brute_sparsest_cut(WeightedGraph(5), Demands.uniform(5), cap=4)


def test_gray_code_visits_every_subset_once():
    g = k4()
    masks = [m for m, _, _ in iter_cuts(g, Demands.uniform(4))]
    assert sorted(masks) == list(range(1, 16))


@given(graph_and_demands(nmax=7))
def test_matches_naive_enumeration(gd):
    g, d = gd
    assert brute_sparsest_cut(g, d).best_value == _naive_sparsest(g, d)
    for psi in (Fraction(1, 4), 1, 4):
        s = brute_most_balanced(g, d, psi)
        assert d.of(s) == _naive_most_balanced_demand(g, d, psi)


@given(graph_and_demands(nmax=6))
def test_invariant_under_relabeling(gd):
    g, d = gd
    perm = list(range(g.n))[::-1]
    h = WeightedGraph.from_edges(g.n, [(perm[u], perm[v], w) for u, v, w in g.edges])
    e = Demands(tuple(d.values[perm.index(v)] for v in range(g.n)))
    assert brute_sparsest_cut(g, d).best_value == brute_sparsest_cut(h, e).best_value


def test_verify_examples():
    rep = brute_verify_decomposition(k4(), Demands.uniform(4), [range(4)], Fraction(1, 2), 1)
    assert rep.ok and rep.parts[0].sparsity == 2
    g, d = dumbbell(), Demands.uniform(6)
    # boundary counted from both sides: 2 <= eps * 6 exactly when eps >= 1/3
    assert brute_verify_decomposition(g, d, [(0, 1, 2), (3, 4, 5)], Fraction(1, 3), 1).ok
    assert not brute_verify_decomposition(g, d, [(0, 1, 2), (3, 4, 5)], Fraction(1, 4), 1).budget_ok
    rep = brute_verify_decomposition(k4(), Demands((1, 1, 0, 0)), [(0, 1), (2, 3)], 1, 1)
    assert [p.status for p in rep.parts] == ["pass", "vacuous"]


def test_verify_bad_partition_and_unverified():
    g, d = k4(), Demands.uniform(4)
    assert not brute_verify_decomposition(g, d, [(0, 1), (1, 2, 3)], 1, 1).partition_ok
    assert not brute_verify_decomposition(g, d, [(0, 1)], 1, 1).partition_ok
    rep = brute_verify_decomposition(g, d, [range(4)], 1, 1, cap=3)
    assert rep.ok and rep.unverified == 1
    rep = brute_verify_decomposition(g, d, [range(4)], 1, 3)
    assert not rep.ok and rep.parts[0].status == "fail" and rep.parts[0].witness
