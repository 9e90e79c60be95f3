"""Most-balanced sparse cuts by recursion over j-tree cores.

Each level packs ``t`` j-trees, solves the core recursively on a sparsified
copy and the peripheral forest with the greedy tree cut, lifts every
candidate back, recomputes its sparsity in the input graph, and keeps the
most balanced one. Small instances are solved exactly by enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .config import DEFAULT, Config
from .errors import AllZeroDemand, Disconnected
from .graph import Demands, WeightedGraph, _ratio, components, cut_weight
from .jtree import decompose, lift_core_cut, lift_tree_cut, split_core_and_tree
from .oracle import brute_most_balanced
from .sparsify import sparsify
from .treecut import RootedTree, find_centroid_root, rooted_tree_bal_cut


@dataclass(frozen=True)
class BalCutParams:
    psi: object
    psi_star: object
    b: object
    r: int
    m0: int
    alpha: object = 1
    beta: object = 1
    t: int = 1

    def violations(self) -> list[str]:
        out = []
        if self.psi < 12 * self.beta * self.psi_star:
            out.append("psi < 12*beta*psi_star")
        if self.b < 6:
            out.append("b < 6")
        return out

    @property
    def ratio(self):
        return _ratio(self.psi, self.psi_star)


@dataclass
class MostBalancedCut:
    side: frozenset
    sparsity: object
    demand: object
    provenance: str  # oracle | core_recursion | tree_cut | components | empty


@dataclass
class TraceRecord:
    level: int
    n: int
    m: int
    route: str
    provenance: str
    sparsity: object
    demand: object
    beta: object = None
    alphas: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "n": self.n,
            "m": self.m,
            "route": self.route,
            "provenance": self.provenance,
            "sparsity": None if self.sparsity is None else str(self.sparsity),
            "demand": str(self.demand),
            "beta": None if self.beta is None else str(self.beta),
            "alphas": [str(a) for a in self.alphas],
            "flags": list(self.flags),
        }


def _log2(x) -> float:
    return max(1.0, math.log2(max(2.0, float(x))))


def tree_count(m0: int, m: int, U, r: int, config: Config = DEFAULT) -> int:
    t = math.ceil(m0 ** (1.0 / r) * _log2(m) ** config.c_t * _log2(U) ** 2)
    return max(1, min(config.t_max, t))


def core_size(m: int, U, t: int, config: Config = DEFAULT) -> int:
    return max(1, math.ceil(config.core_scale * m * _log2(m) ** config.core_exp * _log2(U) / t))


def theorem_parameters(m: int, U, r: int, psi_star=1, alpha=None, beta=None, config: Config = DEFAULT) -> BalCutParams:
    """Top-level schedule ``psi = 12 beta (3 alpha^2 beta)^r psi_star``, ``b = 6 * 3^r``."""
    alpha = Fraction(config.alpha_bound).limit_denominator(1000) if alpha is None else alpha
    beta = Fraction(config.beta_bound(m)).limit_denominator(1000) if beta is None else beta
    psi = 12 * beta * (3 * alpha * alpha * beta) ** r * psi_star
    return BalCutParams(psi, psi_star, 6 * 3 ** r, r, m, alpha, beta, tree_count(m, m, U, r, config))


def lightest_components_cut(g: WeightedGraph, d: Demands) -> frozenset:
    """Lightest components, added while total demand stays within d(V)/2."""
    comps = sorted(components(g), key=lambda c: (d.of(c), c[0]))
    chosen, acc = [], 0
    for c in comps:
        dc = d.of(c)
        if 2 * (acc + dc) > d.total:
            break
        acc += dc
        chosen.extend(c)
    return frozenset(chosen) if acc > 0 else frozenset()


def _finish(g, d, side, provenance) -> MostBalancedCut:
    if not side:
        return MostBalancedCut(frozenset(), None, 0, "empty")
    din = d.of(side)
    if 2 * din > d.total:
        side = frozenset(range(g.n)) - side
        din = d.total - din
    return MostBalancedCut(frozenset(side), _ratio(cut_weight(g, side), din), din, provenance)


def weighted_bal_cut(
    g: WeightedGraph,
    d: Demands,
    params: BalCutParams,
    config: Config = DEFAULT,
    trace: list | None = None,
    allow_disconnected: bool = False,
) -> MostBalancedCut:
    """Return S with ``d(S) <= d(V)/2`` and ``w(S, V-S) <= psi * d(S)``, or the empty set.

    When the j-tree contracts hold, ``d(S) >= d(S*)/b`` for the heaviest
    ``psi_star``-sparse S*. Soundness of the sparsity bound never depends on
    them: every candidate is re-measured in ``g``.
    """
    if not d.total > 0:
        raise AllZeroDemand("all demands are zero")
    if not allow_disconnected and not g.is_connected():
        raise Disconnected("weighted_bal_cut needs a connected graph")
    return _bal_cut(g, d, params, config, trace, 0)


def _bal_cut(g, d, params, config, trace, level) -> MostBalancedCut:
    def record(route, res, **kw):
        if trace is not None:
            trace.append(TraceRecord(level, g.n, g.m, route, res.provenance, res.sparsity, res.demand, **kw))
        return res

    if g.n <= 1 or not d.total > 0:
        return record("trivial", _finish(g, d, frozenset(), "empty"))
    if g.m <= config.base_edges and g.n <= config.oracle_cap:
        side = brute_most_balanced(g, d, params.psi, cap=config.oracle_cap)
        return record("oracle", _finish(g, d, side, "oracle"))
    if not g.is_connected():
        return record("components", _finish(g, d, lightest_components_cut(g, d), "components"))

    can_recurse = level < params.r and params.b >= 18
    U = g.capacity_ratio()
    t = tree_count(params.m0, g.m, U, params.r, config)
    if can_recurse:
        j = core_size(g.m, U, t, config)
        route = "recursive"
    else:
        # no recursion budget left: spanning trees only, forest cuts only
        j = 1
        route = "tree_only"
    dist = decompose(g, t, j, d)
    beta = dist.beta
    flags = []
    if beta > params.beta:
        flags.append("beta_exceeds_bound")
    if params.psi < 12 * beta * params.psi_star:
        flags.append("psi_below_12_beta_psi_star")

    candidates = []  # (side, provenance)
    alphas = []
    size_cap = g.m / max(1.0, params.m0 ** (1.0 / params.r))
    for _, jt in dist.items:
        split = split_core_and_tree(jt, d)
        h = split.core_graph
        if can_recurse and h.n >= 2:
            hs, cert = sparsify(h, config=config)
            alpha = cert.alpha_declared
            alphas.append(alpha)
            if alpha > params.alpha:
                flags.append("alpha_exceeds_bound")
            if hs.m > size_cap * _log2(g.m) ** 2:
                flags.append("core_size_above_bound")
            sub_params = replace(
                params,
                psi=_ratio(params.psi, 1) / alpha,
                psi_star=3 * alpha * beta * params.psi_star,
                b=_ratio(params.b, 3),
                alpha=alpha,
                beta=beta,
                t=t,
            )
            sub = _bal_cut(hs, split.core_demands, sub_params, config, trace, level + 1)
            if sub.side:
                candidates.append((lift_core_cut(jt, split, sub.side), "core_recursion"))
        tg = split.tree_graph
        if tg.n >= 2:
            root = find_centroid_root(tg, split.tree_demands)
            rt = RootedTree.build(tg, split.tree_demands, root)
            tc = rooted_tree_bal_cut(rt, _ratio(params.psi, 6))
            if tc.side:
                candidates.append((lift_tree_cut(split, tc.side), "tree_cut"))

    best = None
    best_key = None
    for side, prov in candidates:
        din = d.of(side)
        low = min(din, d.total - din)
        if not low > 0:
            continue
        w = cut_weight(g, side)
        if w > params.psi * low:
            continue
        other = frozenset(range(g.n)) - side
        if 2 * din == d.total:
            small = min(side, other, key=sorted)
        else:
            small = side if 2 * din < d.total else other
        key = (-low, _ratio(w, low), tuple(sorted(small)))
        if best_key is None or key < best_key:
            best, best_key = (small, prov), key
    res = _finish(g, d, best[0], best[1]) if best else _finish(g, d, frozenset(), "empty")
    return record(route, res, beta=beta, alphas=alphas, flags=sorted(set(flags)))
