import math

import pytest
from hypothesis import given, settings

from conftest import corpus, dumbbell, graph_and_demands, k4
from xdecomp.errors import Disconnected
from xdecomp.graph import Demands, WeightedGraph, cut_weight
from xdecomp.jtree import (
    decompose,
    lift_core_cut,
    lift_tree_cut,
    split_core_and_tree,
    verify_embedding_congestion,
    verify_jtree,
)
from xdecomp.oracle import iter_cuts
from xdecomp.treecut import RootedTree, find_centroid_root


def _subsets(n):
    for mask in range(1, (1 << n) - 1):
        yield {v for v in range(n) if mask >> v & 1}


def test_identity_when_core_covers_graph():
    dist = decompose(k4(), 4, 4)
    assert dist.t == 1 and dist.beta == 1
    jt = dist.items[0][1]
    assert jt.core == (0, 1, 2, 3) and not jt.forest_edges and jt.graph == k4()


def test_disconnected_rejected():
    with pytest.raises(Disconnected):
        decompose(WeightedGraph.from_edges(3, [(0, 1, 1)]), 2, 1)


def test_one_tree_split():
    g = dumbbell()
    dist = decompose(g, 1, 1)
    jt = dist.items[0][1]
    assert len(jt.core) == 1 and jt.graph.is_tree()
    split = split_core_and_tree(jt, Demands.uniform(6))
    assert split.core_graph.n == 1 and split.core_demands.values == (6,)
    assert split.tree_graph.n == 6


def test_split_with_empty_forest():
    dist = decompose(k4(), 1, 4)
    split = split_core_and_tree(dist.items[0][1], Demands((1, 2, 3, 4)))
    assert split.core_demands.values == (1, 2, 3, 4) and split.tree_graph.n == 1


def test_demand_conservation_on_dumbbell():
    g = dumbbell()
    d = Demands.degree(g)
    for _, jt in decompose(g, 4, 2, d).items:
        s = split_core_and_tree(jt, d)
        assert s.core_demands.total == d.total == s.tree_demands.total
        assert s.tree_demands[s.core_vertex] == d.of(jt.core)


@given(graph_and_demands(nmin=3, nmax=8))
def test_contract_properties(gd):
    g, d = gd
    for j in (1, 2, max(1, g.n // 2)):
        dist = decompose(g, 3, j, d)
        assert sum(lam for lam, _ in dist.items) == 1
        assert dist.beta >= 1
        for i, (_, jt) in enumerate(dist.items):
            assert verify_jtree(jt, j)["ok"]
            assert verify_embedding_congestion(g, dist.embedding(i), jt.graph) <= 1
            zero = Demands((0,) * g.n)
            for (_, a, _), (_, b, _) in zip(iter_cuts(g, zero), iter_cuts(jt.graph, zero)):
                assert b >= a


@given(graph_and_demands(nmin=3, nmax=6))
@settings(max_examples=40)
def test_core_or_tree_holds_a_good_cut(gd):
    # for every S* with d(S*) <= d(V)/2, either the contracted tree or the core has a cut
    # no heavier than w_Gi(S*) with the stated balance
    g, d = gd
    dist = decompose(g, 2, 2, d)
    for _, jt in dist.items:
        split = split_core_and_tree(jt, d)
        tg, td = split.tree_graph, split.tree_demands
        rt = RootedTree.build(tg, td, find_centroid_root(tg, td))
        unions = []
        subs = [frozenset(rt.subtree(u)) for u in range(tg.n)]
        for mask in range(1 << tg.n):
            roots = [u for u in range(tg.n) if mask >> u & 1 and u != rt.root]
            if len(roots) != bin(mask).count("1"):
                continue
            acc = set()
            if all(not (acc & subs[u]) and not acc.update(subs[u]) for u in roots):
                unions.append(frozenset(acc))
        h, hd = split.core_graph, split.core_demands
        for s in _subsets(g.n):
            ds = d.of(s)
            if 2 * ds > d.total:
                continue
            wg = cut_weight(jt.graph, s)
            tree_ok = any(
                cut_weight(tg, u) <= wg and ds <= 2 * td.of(u) and 3 * td.of(u) <= 2 * d.total for u in unions
            )
            core_ok = any(
                cut_weight(h, k) <= wg and 3 * min(hd.of(k), hd.total - hd.of(k)) >= ds
                for k in ([set()] + list(_subsets(h.n)) if h.n > 1 else [set()])
            )
            assert tree_ok or core_ok


def test_lifts_are_consistent():
    g = dumbbell()
    d = Demands.uniform(6)
    for _, jt in decompose(g, 3, 2, d).items:
        split = split_core_and_tree(jt, d)
        for s in _subsets(split.core_graph.n):
            lifted = lift_core_cut(jt, split, s)
            assert d.of(lifted) == split.core_demands.of(s)
            assert cut_weight(jt.graph, lifted) == cut_weight(split.core_graph, s)
        for s in _subsets(split.tree_graph.n):
            lifted = lift_tree_cut(split, s)
            assert cut_weight(jt.graph, lifted) == cut_weight(split.tree_graph, s)


def test_beta_bound_on_corpus():
    worst = 0
    for g, d in corpus(30, nmin=3, nmax=10, seed=7):
        if g.m < 2:
            continue
        dist = decompose(g, 4, max(1, g.n // 3), d)
        worst = max(worst, float(dist.beta) / math.log2(g.m))
    assert worst <= 10
