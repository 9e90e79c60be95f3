"""Cut sparsification by unions of per-weight-class greedy spanners.

The returned certificate's ``alpha`` is the measured cut distortion: exact
(every cut enumerated) up to ``Config.sparsify_exact_cap`` vertices, and a
deterministic sample of cuts above that.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, Config
from .graph import WeightedGraph, _ratio, cut_weight
from .oracle import iter_cuts
from .graph import Demands


@dataclass(frozen=True)
class SparsifierCertificate:
    alpha_declared: object
    edges_before: int
    edges_after: int
    method: str  # passthrough | spanner_union
    exact: bool = True


def _bounded_hops(adj, src, dst, limit) -> bool:
    """True if ``dst`` is within ``limit`` hops of ``src``."""
    if src == dst:
        return True
    seen = {src}
    frontier = deque([(src, 0)])
    while frontier:
        u, k = frontier.popleft()
        if k == limit:
            continue
        for v in adj[u]:
            if v == dst:
                return True
            if v not in seen:
                seen.add(v)
                frontier.append((v, k + 1))
    return False


def _weight_class(w, wmin) -> int:
    ratio = float(w) / float(wmin)
    k = int(math.floor(math.log2(ratio))) if ratio >= 1 else 0
    # guard against float rounding at exact powers of two
    while k > 0 and 2 ** k * wmin > w:
        k -= 1
    while 2 ** (k + 1) * wmin <= w:
        k += 1
    return k


def cut_distortion(g: WeightedGraph, h: WeightedGraph, exact_cap: int, samples: int):
    """Max over cuts of ``max(w_H/w_G, w_G/w_H)``; returns ``(alpha, exact)``."""
    if g.n <= exact_cap:
        zero = Demands((0,) * g.n)
        best = 1
        # walk both graphs' cuts in lockstep; same Gray-code order
        for (_, a, _), (_, b, _) in zip(iter_cuts(g, zero), iter_cuts(h, zero)):
            if a == 0 and b == 0:
                continue
            if a == 0 or b == 0:
                return math.inf, True
            r = max(_ratio(a, b), _ratio(b, a))
            if r > best:
                best = r
        return best, True
    rng = random.Random(0x5EED ^ g.n ^ g.m)
    cuts = [{v} for v in range(g.n)]
    for _ in range(samples):
        p = rng.random()
        cuts.append({v for v in range(g.n) if rng.random() < p})
    best = 1
    for s in cuts:
        if not s or len(s) == g.n:
            continue
        a, b = cut_weight(g, s), cut_weight(h, s)
        if a == 0 and b == 0:
            continue
        if a == 0 or b == 0:
            return math.inf, False
        best = max(best, _ratio(a, b), _ratio(b, a))
    return best, False


def sparsify(g: WeightedGraph, alpha_target=1, size_budget: int | None = None, config: Config = DEFAULT):
    """Return ``(H, certificate)`` with H on the same vertices approximating every cut of g.

    Graphs within ``size_budget`` edges pass through unchanged. Otherwise edges
    are bucketed into powers-of-two weight classes; each class keeps a greedy
    spanner of stretch ``2*ceil(log2 n) - 1`` and its kept edges are scaled so
    the class's total weight is preserved.
    """
    if alpha_target < 1:
        raise ValueError("alpha_target must be >= 1")
    n = g.n
    if size_budget is None:
        size_budget = default_size_budget(g)
    if g.m <= size_budget or g.m <= n - 1:
        return g, SparsifierCertificate(1, g.m, g.m, "passthrough")
    stretch = 2 * max(1, math.ceil(math.log2(n))) - 1
    wmin = g.min_weight()
    buckets = {}
    for e, (_, _, w) in enumerate(g.edges):
        buckets.setdefault(_weight_class(w, wmin), []).append(e)
    kept = []
    for k in sorted(buckets):
        members = sorted(buckets[k], key=lambda e: (g.edges[e][2], e))
        adj = [[] for _ in range(n)]
        keep = []
        for e in members:
            u, v, _ = g.edges[e]
            if not _bounded_hops(adj, u, v, stretch):
                adj[u].append(v)
                adj[v].append(u)
                keep.append(e)
        total = sum((g.edges[e][2] for e in members), 0)
        kept_total = sum((g.edges[e][2] for e in keep), 0)
        scale = _ratio(total, kept_total)
        kept.extend((g.edges[e][0], g.edges[e][1], g.edges[e][2] * scale) for e in keep)
    h = WeightedGraph.from_edges(n, kept)
    if h.m == g.m:
        return g, SparsifierCertificate(1, g.m, g.m, "passthrough")
    alpha, exact = cut_distortion(g, h, config.sparsify_exact_cap, config.sparsify_samples)
    return h, SparsifierCertificate(alpha, g.m, h.m, "spanner_union", exact)


def default_size_budget(g: WeightedGraph) -> int:
    n = max(2, g.n)
    logu = max(1.0, math.log2(float(g.capacity_ratio())))
    return math.ceil(n * math.log2(n) * logu)


def laplacian(g: WeightedGraph, exact: bool = False) -> np.ndarray:
    """Dense Laplacian; ``exact`` keeps the weights as Python objects."""
    dtype = object if exact else float
    L = np.zeros((g.n, g.n), dtype=dtype)
    if exact:
        L[:] = 0
    for u, v, w in g.edges:
        x = w if exact else float(w)
        L[u, v] -= x
        L[v, u] -= x
        L[u, u] += x
        L[v, v] += x
    return L


def quadratic_form(L: np.ndarray, x) -> object:
    x = np.asarray(x, dtype=L.dtype)
    return x @ L @ x
