import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from conftest import graphs, k4, random_tree
from xdecomp.config import Config
from xdecomp.graph import WeightedGraph, cut_weight
from xdecomp.sparsify import _weight_class, cut_distortion, default_size_budget, laplacian, quadratic_form, sparsify


def dense(rng, n):
    return WeightedGraph.from_edges(n, [(a, b, rng.randint(1, 16)) for a in range(n) for b in range(a + 1, n)])


def _all_cut_ratios_within(g, h, alpha):
    for mask in range(1, (1 << g.n) - 1):
        s = {v for v in range(g.n) if mask >> v & 1}
        a, b = cut_weight(g, s), cut_weight(h, s)
        if not (Fraction(a) / alpha <= b <= alpha * a):
            return False
    return True


def test_tree_passes_through():
    t = random_tree(random.Random(1), 9)
    h, cert = sparsify(t, size_budget=0)
    assert h is t and cert.method == "passthrough" and cert.alpha_declared == 1


def test_dense_graph_is_thinned_and_certified():
    g = dense(random.Random(5), 12)
    budget = math.ceil(12 * math.log2(12))
    h, cert = sparsify(g, size_budget=budget)
    assert cert.method == "spanner_union" and cert.exact
    assert h.m < g.m and h.n == g.n
    assert h.total_weight() == g.total_weight()
    assert _all_cut_ratios_within(g, h, cert.alpha_declared)


def test_weight_classes():
    assert [_weight_class(w, 1) for w in (1, 2, 3, 4, 7, 8)] == [0, 1, 1, 2, 2, 3]
    assert _weight_class(Fraction(3, 2), Fraction(1, 2)) == 1


def test_distortion_detects_missing_cut():
    g = k4()
    h = WeightedGraph.from_edges(4, [(0, 1, 1), (2, 3, 1)])
    alpha, exact = cut_distortion(g, h, 14, 0)
    assert alpha == math.inf and exact


def test_sampled_distortion_above_exact_cap():
    g = dense(random.Random(2), 10)
    h, cert = sparsify(g, size_budget=10, config=Config(sparsify_exact_cap=4, sparsify_samples=200))
    assert not cert.exact
    exact_alpha, _ = cut_distortion(g, h, 14, 0)
    assert cert.alpha_declared <= exact_alpha


@given(graphs(nmin=3, nmax=9))
def test_certificate_holds_on_every_cut(g):
    h, cert = sparsify(g, size_budget=g.n)
    assert _all_cut_ratios_within(g, h, cert.alpha_declared)


def test_laplacian_quadratic_form_is_cut_weight():
    g = dense(random.Random(9), 6)
    L = laplacian(g, exact=True)
    Lf = laplacian(g)
    for s in ({0}, {1, 2}, {0, 3, 5}):
        x = [1 if v in s else 0 for v in range(g.n)]
        assert quadratic_form(L, x) == cut_weight(g, s)
        assert quadratic_form(Lf, x) == pytest.approx(float(cut_weight(g, s)))
    assert np.allclose(Lf.sum(axis=1), 0)


def test_default_budget():
    assert default_size_budget(k4()) == 8
