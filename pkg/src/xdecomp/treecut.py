"""Balanced sparse cuts on a demand-weighted tree via greedy subtree selection."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotATree
from .graph import Demands, WeightedGraph


@dataclass(frozen=True)
class RootedTree:
    tree: WeightedGraph
    demands: Demands
    root: int
    parent: tuple  # parent[root] == -1
    parent_weight: tuple  # weight of the edge to the parent; 0 at the root
    order: tuple  # breadth-first, root first (parents before children)
    subtree_demand: tuple

    @classmethod
    def build(cls, t: WeightedGraph, d: Demands, root: int) -> "RootedTree":
        if not t.is_tree():
            raise NotATree("graph is not a connected tree")
        n = t.n
        parent = [-1] * n
        pw = [0] * n
        order = [root]
        seen = [False] * n
        seen[root] = True
        adj = t.adjacency
        i = 0
        while i < len(order):
            u = order[i]
            i += 1
            for v, w, _ in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    parent[v] = u
                    pw[v] = w
                    order.append(v)
        sub = list(d.values)
        for u in reversed(order):
            if parent[u] >= 0:
                sub[parent[u]] += sub[u]
        return cls(t, d, root, tuple(parent), tuple(pw), tuple(order), tuple(sub))

    def is_centroid_rooted(self) -> bool:
        total = self.subtree_demand[self.root]
        return all(2 * s <= total for v, s in enumerate(self.subtree_demand) if v != self.root)

    def subtree(self, u: int) -> list[int]:
        """Vertices of the subtree rooted at ``u``."""
        children = self.children()
        out, stack = [], [u]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(children[x])
        return out

    def children(self) -> list[list[int]]:
        ch = [[] for _ in range(self.tree.n)]
        for v in self.order[1:]:
            ch[self.parent[v]].append(v)
        return ch


def find_centroid_root(t: WeightedGraph, d: Demands) -> int:
    """Vertex whose child subtrees each carry at most half the total demand.

    Starts from vertex 0 and walks into the heavy child, so the choice is
    deterministic.
    """
    rt = RootedTree.build(t, d, 0)
    total = rt.subtree_demand[0]
    children = rt.children()
    sub = rt.subtree_demand
    u = 0
    while True:
        heavy = [c for c in children[u] if 2 * sub[c] > total]
        if not heavy:
            return u
        u = heavy[0]


@dataclass
class TreeCutResult:
    side: frozenset
    roots: tuple  # subtree roots whose union is ``side``
    operations: int


def rooted_tree_bal_cut(rt: RootedTree, psi_t) -> TreeCutResult:
    """Greedily union maximal subtrees whose parent edge is ``2*psi_t``-sparse.

    Candidates are non-root vertices ``u`` with
    ``w(parent edge of u) <= 2 * psi_t * d(subtree of u)``; only those without a
    candidate ancestor are kept, and their subtrees are added in increasing
    vertex id until the accumulated demand reaches a quarter of the total.
    """
    n = rt.tree.n
    ops = 0
    sub = rt.subtree_demand
    pw = rt.parent_weight
    parent = rt.parent
    qualifies = [False] * n
    for u in rt.order:
        ops += 1
        if u != rt.root and pw[u] <= 2 * psi_t * sub[u]:
            qualifies[u] = True
    # topmost candidates: top-down pass carrying "has a candidate ancestor"
    covered = [False] * n
    is_top = [False] * n
    for u in rt.order:
        ops += 1
        p = parent[u]
        anc = p >= 0 and (covered[p] or qualifies[p])
        covered[u] = anc
        is_top[u] = qualifies[u] and not anc
    top = [u for u in range(n) if is_top[u]]
    ops += n
    total = sub[rt.root]
    chosen = []
    acc = 0
    for u in top:
        ops += 1
        chosen.append(u)
        acc += sub[u]
        if 4 * acc >= total:
            break
    # expand chosen roots into vertex sets
    mark = [False] * n
    for u in chosen:
        mark[u] = True
    side = []
    inside = [False] * n
    for u in rt.order:
        ops += 1
        p = parent[u]
        if mark[u] or (p >= 0 and inside[p]):
            inside[u] = True
            side.append(u)
    return TreeCutResult(frozenset(side), tuple(chosen), ops)
