"""Distributions of j-trees built by multiplicative-weights spanning-tree packing.

Each round picks a spanning tree that favours heavy, lightly-congested edges,
turns it into a j-tree (a small core plus a peripheral forest), and routes
every edge of the input graph through it. The j-tree's edge weights are
exactly the routed loads, so the input embeds into it with congestion 1.
Routing each j-tree edge back into the input graph gives the congestion of
the averaged distribution, reported as ``beta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import Disconnected
from .graph import Demands, WeightedGraph, _ratio, contract, induced_subgraph
from .treecut import find_centroid_root


class _DSU:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        self.p[max(a, b)] = min(a, b)
        return True


@dataclass(frozen=True)
class JTree:
    graph: WeightedGraph
    core: tuple  # sorted core vertex ids
    forest_edges: frozenset  # (u, v) pairs with u < v
    tree_of: tuple  # v -> core vertex of v's peripheral tree
    forest_parent: tuple  # parent in the peripheral forest, -1 at core vertices
    core_edge_count: int

    def peripheral_tree(self, c: int) -> list[int]:
        return [v for v, r in enumerate(self.tree_of) if r == c]

    def _climb(self, u, stop):
        path = [u]
        while u != stop:
            u = self.forest_parent[u]
            if u < 0:
                raise ValueError("vertex is not below the requested ancestor")
            path.append(u)
        return path

    def _depth(self, u):
        k = 0
        while self.forest_parent[u] >= 0:
            u = self.forest_parent[u]
            k += 1
        return k

    def route(self, u: int, v: int) -> list[int]:
        """Vertex path in this j-tree carrying the source edge ``(u, v)``."""
        cu, cv = self.tree_of[u], self.tree_of[v]
        if cu != cv:
            return self._climb(u, cu) + self._climb(v, cv)[::-1]
        a, b = u, v
        da, db = self._depth(a), self._depth(b)
        left, right = [a], [b]
        fp = self.forest_parent
        while da > db:
            a = fp[a]
            da -= 1
            left.append(a)
        while db > da:
            b = fp[b]
            db -= 1
            right.append(b)
        while a != b:
            a, b = fp[a], fp[b]
            left.append(a)
            right.append(b)
        return left + right[-2::-1]


@dataclass
class JTreeDistribution:
    items: list  # (lambda, JTree)
    source: WeightedGraph
    beta: object  # congestion of sum_i lambda_i G_i routed into the source
    edge_congestion: list = field(default_factory=list)

    @property
    def t(self) -> int:
        return len(self.items)

    def embedding(self, i: int) -> list[list[int]]:
        """Paths in ``G_i`` for every source edge, in source edge order."""
        jt = self.items[i][1]
        return [jt.route(u, v) for u, v, _ in self.source.edges]


def _kruskal(g: WeightedGraph, keys) -> list[int]:
    order = sorted(range(g.m), key=lambda e: (keys[e], e))
    dsu = _DSU(g.n)
    chosen = []
    for e in order:
        u, v, _ = g.edges[e]
        if dsu.union(u, v):
            chosen.append(e)
            if len(chosen) == g.n - 1:
                break
    return chosen


def _rooted(n, tree_adj, root):
    parent = [-1] * n
    order = [root]
    seen = [False] * n
    seen[root] = True
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for v in tree_adj[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                order.append(v)
    return parent, order


class _LCA:
    def __init__(self, parent, order):
        n = len(parent)
        depth = [0] * n
        for u in order[1:]:
            depth[u] = depth[parent[u]] + 1
        levels = max(1, max(depth).bit_length())
        up = [[p if p >= 0 else u for u, p in enumerate(parent)]]
        for _ in range(1, levels):
            prev = up[-1]
            up.append([prev[prev[u]] for u in range(n)])
        self.depth, self.up = depth, up

    def __call__(self, a, b):
        depth, up = self.depth, self.up
        if depth[a] < depth[b]:
            a, b = b, a
        diff = depth[a] - depth[b]
        k = 0
        while diff:
            if diff & 1:
                a = up[k][a]
            diff >>= 1
            k += 1
        if a == b:
            return a
        for k in range(len(up) - 1, -1, -1):
            if up[k][a] != up[k][b]:
                a, b = up[k][a], up[k][b]
        return up[0][a]


def _subtree_sums(marks, parent, order):
    for u in reversed(order):
        p = parent[u]
        if p >= 0:
            marks[p] += marks[u]
    return marks


def build_jtree(g: WeightedGraph, tree_edges: list[int], j: int, d: Demands):
    """Turn a spanning tree of ``g`` into a j-tree; returns ``(JTree, load_into_g)``.

    ``load_into_g[e]`` is the weight of the j-tree routed over source edge ``e``
    when each j-tree edge is mapped back to paths of ``g``.
    """
    n = g.n
    tadj = [[] for _ in range(n)]
    for e in tree_edges:
        u, v, _ = g.edges[e]
        tadj[u].append(v)
        tadj[v].append(u)
    tgraph = WeightedGraph.from_edges(n, (g.edges[e] for e in tree_edges))
    dd = d if d.total > 0 else Demands.uniform(n)
    root = find_centroid_root(tgraph, dd)
    parent, order = _rooted(n, tadj, root)
    lca = _LCA(parent, order)

    # loads of T if every source edge follows its tree path; used to pick the edges to cut
    zero = g.edges[0][2] * 0 if g.edges else 0
    marks = [zero] * n
    for u, v, w in g.edges:
        marks[u] += w
        marks[v] += w
        marks[lca(u, v)] -= 2 * w
    tload = _subtree_sums(marks, parent, order)
    # cut the j-1 most congested tree edges
    pw = {}
    for e in tree_edges:
        u, v, w = g.edges[e]
        pw[v if parent[v] == u else u] = w
    ranked = sorted((v for v in range(n) if v != root), key=lambda v: (-_ratio(tload[v], pw[v]), v))
    cut_below = set(ranked[: max(0, j - 1)])
    comp = list(range(n))
    for u in order:
        if u != root and u not in cut_below:
            comp[u] = comp[parent[u]]
    # each component's core vertex is the one with the most incident cross weight
    cross_w = [zero] * n
    for u, v, w in g.edges:
        if comp[u] != comp[v]:
            cross_w[u] += w
            cross_w[v] += w
    best = {}
    for v in range(n):
        c = comp[v]
        if c not in best or cross_w[v] > cross_w[best[c]]:
            best[c] = v
    core = sorted(best.values())
    tree_of = [best[comp[v]] for v in range(n)]
    fadj = [[] for _ in range(n)]
    for v in range(n):
        if v != root and v not in cut_below:
            fadj[v].append(parent[v])
            fadj[parent[v]].append(v)
    fparent = [-1] * n
    for c in core:
        stack = [c]
        while stack:
            x = stack.pop()
            for y in fadj[x]:
                if y != fparent[x]:
                    fparent[y] = x
                    stack.append(y)

    def add_path(mk, a, b, w):
        mk[a] += w
        mk[b] += w
        mk[lca(a, b)] -= 2 * w

    # route source edges: within a peripheral tree along the tree path,
    # otherwise to the core, across one core edge, and back out; the core
    # edge itself maps to the same forest segments plus the source edge
    fmarks = [zero] * n
    back = [zero] * n
    core_w = {}
    cross = []
    for e, (u, v, w) in enumerate(g.edges):
        cu, cv = tree_of[u], tree_of[v]
        if cu == cv:
            add_path(fmarks, u, v, w)
        else:
            add_path(fmarks, u, cu, w)
            add_path(fmarks, v, cv, w)
            add_path(back, u, cu, w)
            add_path(back, v, cv, w)
            key = (cu, cv) if cu < cv else (cv, cu)
            core_w[key] = core_w.get(key, zero) + w
            cross.append(e)
    floads = _subtree_sums(fmarks, parent, order)
    bloads = _subtree_sums(back, parent, order)

    edge_index = {(u, v): i for i, (u, v, _) in enumerate(g.edges)}
    load_into_g = [zero] * g.m
    forest = []
    edges = []
    for v in range(n):
        if v == root or v in cut_below:
            continue
        p = parent[v]
        key = (v, p) if v < p else (p, v)
        forest.append(key)
        edges.append((key[0], key[1], floads[v]))
        load_into_g[edge_index[key]] += floads[v] + bloads[v]
    for e in cross:
        load_into_g[e] += g.edges[e][2]
    for (a, b), w in core_w.items():
        edges.append((a, b, w))
    jgraph = WeightedGraph.from_edges(n, edges)
    jt = JTree(jgraph, tuple(core), frozenset(forest), tuple(tree_of), tuple(fparent), len(core_w))
    return jt, load_into_g


def decompose(g: WeightedGraph, t: int, j_target: int, d: Demands | None = None) -> JTreeDistribution:
    """Build ``t`` j-trees with cores of at most ``j_target`` vertices.

    With ``j_target >= n`` the graph is its own j-tree and a single item is
    returned.
    """
    if t < 1 or j_target < 1:
        raise ValueError("t and j_target must be at least 1")
    if not g.is_connected():
        raise Disconnected("j-tree decomposition needs a connected graph")
    d = d if d is not None else Demands.uniform(g.n)
    if g.m == 0:
        jt = JTree(g, (0,), frozenset(), (0,), (-1,), 0)
        return JTreeDistribution([(1, jt)], g, 1, [])
    if j_target >= g.n:
        jt = JTree(g, tuple(range(g.n)), frozenset(), tuple(range(g.n)), (-1,) * g.n, g.m)
        return JTreeDistribution([(1, jt)], g, 1, [1] * g.m)

    wf = [float(w) for _, _, w in g.edges]
    cong = [0.0] * g.m
    items = []
    seen = {}
    loads = []
    eta = 1.0
    for _ in range(t):
        keys = [math.exp(min(eta * cong[e], 600.0)) / wf[e] for e in range(g.m)]
        tree = tuple(sorted(_kruskal(g, keys)))
        if tree not in seen:
            seen[tree] = build_jtree(g, list(tree), j_target, d)
        jt, load = seen[tree]
        items.append(jt)
        loads.append(load)
        for e in range(g.m):
            cong[e] += float(load[e]) / wf[e]
    lam = _ratio(1, t)
    avg = [sum((lam * ld[e] for ld in loads), 0) for e in range(g.m)]
    ratios = [_ratio(avg[e], g.edges[e][2]) for e in range(g.m)]
    return JTreeDistribution([(lam, jt) for jt in items], g, max(ratios), ratios)


def verify_jtree(jt: JTree, j: int | None = None) -> dict:
    """Structural check of the j-tree definition; returns ``{"ok": bool, "problems": [...]}``."""
    g = jt.graph
    core = set(jt.core)
    problems = []
    if j is not None and len(core) > j:
        problems.append(f"core has {len(core)} > {j} vertices")
    dsu = _DSU(g.n)
    present = {(u, v) for u, v, _ in g.edges}
    for u, v in sorted(jt.forest_edges):
        if (u, v) not in present:
            problems.append(f"forest edge ({u}, {v}) missing from graph")
        if not dsu.union(u, v):
            problems.append(f"forest edge ({u}, {v}) closes a cycle")
    comp_cores = {}
    for c in core:
        comp_cores.setdefault(dsu.find(c), []).append(c)
    for v in range(g.n):
        cs = comp_cores.get(dsu.find(v), [])
        if len(cs) != 1:
            problems.append(f"forest component of {v} holds {len(cs)} core vertices")
        elif jt.tree_of[v] != cs[0]:
            problems.append(f"tree_of[{v}] = {jt.tree_of[v]}, expected {cs[0]}")
    for u, v, _ in g.edges:
        if (u, v) not in jt.forest_edges and not (u in core and v in core):
            problems.append(f"non-forest edge ({u}, {v}) leaves the core")
    return {"ok": not problems, "problems": problems}


def verify_embedding_congestion(g: WeightedGraph, paths, host: WeightedGraph):
    """Maximum over host edges of routed guest weight divided by host weight."""
    hw = {(u, v): w for u, v, w in host.edges}
    load = {}
    for (gu, gv, w), path in zip(g.edges, paths):
        if path[0] != gu or path[-1] != gv:
            raise ValueError(f"path for ({gu}, {gv}) has wrong endpoints")
        for a, b in zip(path, path[1:]):
            key = (a, b) if a < b else (b, a)
            if key not in hw:
                raise ValueError(f"path uses ({a}, {b}), not a host edge")
            load[key] = load.get(key, 0) + w
    if not load:
        return 0
    return max(_ratio(x, hw[k]) for k, x in load.items())


@dataclass
class CoreAndTree:
    core_graph: WeightedGraph
    core_demands: Demands
    core_ids: list  # core-graph vertex -> original vertex
    tree_graph: WeightedGraph
    tree_demands: Demands
    tree_map: list  # original vertex -> tree vertex
    core_vertex: int  # tree vertex standing for the contracted core


def split_core_and_tree(jt: JTree, d: Demands) -> CoreAndTree:
    """Contract the forest into the core, and separately the core into one vertex."""
    g = jt.graph
    core_graph, core_ids = induced_subgraph(g, jt.core)
    pos = {c: i for i, c in enumerate(core_ids)}
    cd = [0] * len(core_ids)
    for v in range(g.n):
        cd[pos[jt.tree_of[v]]] += d[v]
    tree_graph, tmap = contract(g, [jt.core])
    td = [0] * tree_graph.n
    for v in range(g.n):
        td[tmap[v]] += d[v]
    return CoreAndTree(core_graph, Demands(tuple(cd)), core_ids, tree_graph, Demands(tuple(td)), tmap, tmap[jt.core[0]])


def lift_core_cut(jt: JTree, split: CoreAndTree, side) -> frozenset:
    chosen = {split.core_ids[v] for v in side}
    return frozenset(v for v in range(jt.graph.n) if jt.tree_of[v] in chosen)


def lift_tree_cut(split: CoreAndTree, side) -> frozenset:
    side = set(side)
    return frozenset(v for v, tv in enumerate(split.tree_map) if tv in side)
