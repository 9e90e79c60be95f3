"""Weighted undirected graphs with vertex demands, and the cut primitives on them.

Vertices are dense integers ``0..n-1``. Weights and demands may be ``int``,
``Fraction`` or ``float``; every routine uses plain arithmetic, so exact
inputs give exact answers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AllZeroDemand, DegenerateSide


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph; ``edges`` holds ``(u, v, w)`` with ``u < v``, sorted."""

    n: int
    edges: tuple = ()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence]) -> "WeightedGraph":
        """Build a graph, merging parallel edges by summing and dropping self-loops."""
        merged: dict[tuple[int, int], object] = {}
        for u, v, w in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if w <= 0:
                raise ValueError(f"edge ({u}, {v}) has non-positive weight {w}")
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            merged[key] = merged[key] + w if key in merged else w
        return cls(n, tuple((u, v, merged[u, v]) for u, v in sorted(merged)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple:
        """Per vertex, a tuple of ``(neighbour, weight, edge_index)``."""
        adj = [[] for _ in range(self.n)]
        for i, (u, v, w) in enumerate(self.edges):
            adj[u].append((v, w, i))
            adj[v].append((u, w, i))
        return tuple(tuple(a) for a in adj)

    @cached_property
    def degrees(self) -> tuple:
        return tuple(sum((w for _, w, _ in a), 0) for a in self.adjacency)

    def total_weight(self):
        return sum((w for _, _, w in self.edges), 0)

    def min_weight(self):
        return min(w for _, _, w in self.edges) if self.edges else None

    def capacity_ratio(self):
        """``max w / min w``; 1 for an edgeless graph."""
        if not self.edges:
            return 1
        ws = [w for _, _, w in self.edges]
        return _ratio(max(ws), min(ws))

    def is_tree(self) -> bool:
        return self.m == self.n - 1 and self.is_connected()

    def is_connected(self) -> bool:
        return self.n <= 1 or len(components(self)) == 1


@dataclass(frozen=True)
class Demands:
    """Non-negative per-vertex demands with a cached total."""

    values: tuple
    total: object = field(init=False)

    def __post_init__(self):
        vals = tuple(self.values)
        if any(x < 0 for x in vals):
            raise ValueError("demands must be non-negative")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "total", sum(vals, 0))

    @classmethod
    def uniform(cls, n: int, value=1) -> "Demands":
        return cls((value,) * n)

    @classmethod
    def degree(cls, g: WeightedGraph) -> "Demands":
        return cls(g.degrees)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, v):
        return self.values[v]

    def of(self, s: Iterable[int]):
        vals = self.values
        return sum((vals[v] for v in s), 0)

    def restrict(self, vertices: Sequence[int]) -> "Demands":
        """Demands of ``vertices``, re-indexed in the given order."""
        return Demands(tuple(self.values[v] for v in vertices))

    def support(self) -> list[int]:
        return [v for v, x in enumerate(self.values) if x > 0]

    def require_nonzero(self):
        if not self.total > 0:
            raise AllZeroDemand("all demands are zero")


DemandVector = Demands


@dataclass(frozen=True)
class Cut:
    side: frozenset
    boundary_weight: object
    demand_in: object
    demand_out: object

    @classmethod
    def of(cls, g: WeightedGraph, d: Demands, s: Iterable[int]) -> "Cut":
        side = frozenset(s)
        din = d.of(side)
        return cls(side, cut_weight(g, side), din, d.total - din)

    @property
    def min_demand(self):
        return min(self.demand_in, self.demand_out)

    @property
    def sparsity(self):
        if not (self.demand_in > 0 and self.demand_out > 0):
            raise DegenerateSide("sparsity undefined: one side carries no demand")
        return _ratio(self.boundary_weight, self.min_demand)


def _ratio(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return a / b
    return Fraction(a) / Fraction(b)


def cut_weight(g: WeightedGraph, s: Iterable[int]):
    """Total weight of edges with exactly one endpoint in ``s``."""
    s = s if isinstance(s, (set, frozenset)) else set(s)
    if len(s) * 2 > g.n:
        return sum((w for u, v, w in g.edges if (u in s) != (v in s)), 0)
    total = 0
    for u in s:
        for v, w, _ in g.adjacency[u]:
            if v not in s:
                total += w
    return total


def d_sparsity(g: WeightedGraph, d: Demands, s: Iterable[int]):
    """``w(S, V-S) / min(d(S), d(V-S))``; raises DegenerateSide unless ``0 < d(S) < d(V)``."""
    return Cut.of(g, d, s).sparsity


def components(g: WeightedGraph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * g.n
    out = []
    adj = g.adjacency
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], [start]
        while stack:
            u = stack.pop()
            for v, _, _ in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
                    comp.append(v)
        comp.sort()
        out.append(comp)
    return out


def induced_subgraph(g: WeightedGraph, s: Iterable[int]):
    """Return ``(G[s], new_to_old)``; new ids follow ascending old ids."""
    new_to_old = sorted(set(s))
    if not new_to_old:
        raise ValueError("induced subgraph of an empty set")
    old_to_new = {v: i for i, v in enumerate(new_to_old)}
    edges = [
        (old_to_new[u], old_to_new[v], w)
        for u, v, w in g.edges
        if u in old_to_new and v in old_to_new
    ]
    return WeightedGraph(len(new_to_old), tuple(edges)), new_to_old


def contract(g: WeightedGraph, groups: Iterable[Iterable[int]]):
    """Merge each group into one vertex; returns ``(graph, old_to_new)``.

    Vertices outside every group stay singletons. New ids are assigned in
    order of each class's smallest member. Parallel edges are summed and
    intra-group edges dropped.
    """
    label = list(range(g.n))
    seen = set()
    for grp in groups:
        grp = list(grp)
        if not grp:
            continue
        rep = min(grp)
        for v in grp:
            if v in seen:
                raise ValueError(f"vertex {v} appears in two groups")
            seen.add(v)
            label[v] = rep
    reps = sorted(set(label))
    rep_id = {r: i for i, r in enumerate(reps)}
    old_to_new = [rep_id[label[v]] for v in range(g.n)]
    merged = WeightedGraph.from_edges(
        len(reps), ((old_to_new[u], old_to_new[v], w) for u, v, w in g.edges)
    )
    return merged, old_to_new


def normalize(g: WeightedGraph, d: Demands | None = None):
    """Rescale so the minimum edge weight (and minimum nonzero demand) is 1.

    Returns ``(g', d', weight_scale, demand_scale)``; original values are the
    normalized ones times their scale.
    """
    wmin = g.min_weight()
    wscale = wmin if wmin is not None else 1
    g2 = WeightedGraph(g.n, tuple((u, v, _ratio(w, wscale)) for u, v, w in g.edges))
    if d is None:
        return g2, None, wscale, 1
    nz = [x for x in d.values if x > 0]
    dscale = min(nz) if nz else 1
    d2 = Demands(tuple(_ratio(x, dscale) if x > 0 else x for x in d.values))
    return g2, d2, wscale, dscale


def log2_mu(g: WeightedGraph) -> float:
    """``log2(m * U)`` clamped below at 1, the log factor used by parameter schedules."""
    return max(1.0, math.log2(max(1, g.m) * float(g.capacity_ratio())))
