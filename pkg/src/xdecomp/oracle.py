"""Exponential-time exact references for small instances.

Every subset of V is visited once in Gray-code order, with the boundary
weight and demand mass updated incrementally. Ties are broken toward the
lexicographically smallest vertex set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import DEFAULT
from .graph import Demands, WeightedGraph, _ratio, induced_subgraph
from .errors import TooLarge


@dataclass(frozen=True)
class OracleResult:
    best_set: frozenset
    best_value: object
    enumerated: int


def _mask_members(mask: int) -> tuple:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _check_cap(g: WeightedGraph, cap):
    cap = DEFAULT.oracle_cap if cap is None else cap
    if g.n > cap:
        raise TooLarge(f"{g.n} vertices exceeds oracle cap {cap}")


def iter_cuts(g: WeightedGraph, d: Demands):
    """Yield ``(mask, boundary_weight, demand_in)`` for every nonempty subset."""
    n = g.n
    adj = g.adjacency
    dem = d.values
    mask = 0
    cut = 0
    din = 0
    for k in range(1, 1 << n):
        v = (k & -k).bit_length() - 1
        bit = 1 << v
        inside = 0
        outside = 0
        for u, w, _ in adj[v]:
            if mask & (1 << u):
                inside += w
            else:
                outside += w
        if mask & bit:
            mask ^= bit
            cut += inside - outside
            din -= dem[v]
        else:
            mask |= bit
            cut += outside - inside
            din += dem[v]
        yield mask, cut, din


def brute_sparsest_cut(g: WeightedGraph, d: Demands, cap=None) -> OracleResult:
    """Minimum d-sparsity over all S with ``0 < d(S) < d(V)``.

    ``best_value`` is None (and ``best_set`` empty) when no such S exists.
    """
    _check_cap(g, cap)
    total = d.total
    best = None
    best_key = None
    count = 0
    for mask, cut, din in iter_cuts(g, d):
        count += 1
        dout = total - din
        if not (din > 0 and dout > 0):
            continue
        val = _ratio(cut, min(din, dout))
        if best is None or val < best:
            best, best_key = val, _mask_members(mask)
        elif val == best:
            key = _mask_members(mask)
            if key < best_key:
                best_key = key
    return OracleResult(frozenset(best_key or ()), best, count)


def brute_most_balanced(g: WeightedGraph, d: Demands, psi_star, cap=None) -> frozenset:
    """Set of maximum demand among ``w(S) <= psi_star * min(d(S), d(V-S))``, ``d(S) <= d(V)/2``.

    Returns the empty set when the best qualifying demand is zero.
    """
    return brute_most_balanced_result(g, d, psi_star, cap).best_set


def brute_most_balanced_result(g: WeightedGraph, d: Demands, psi_star, cap=None) -> OracleResult:
    _check_cap(g, cap)
    total = d.total
    best = 0
    best_key = ()
    count = 0
    for mask, cut, din in iter_cuts(g, d):
        count += 1
        if din <= 0 or 2 * din > total or din < best:
            continue
        if cut > psi_star * din:  # din <= d(V)/2, so min side is din
            continue
        key = _mask_members(mask)
        if din > best or key < best_key:
            best, best_key = din, key
    return OracleResult(frozenset(best_key), best, count)


@dataclass
class PartReport:
    part: tuple
    status: str  # pass | fail | unverified | vacuous
    sparsity: object = None
    witness: tuple = ()


@dataclass
class VerificationReport:
    ok: bool
    budget_ok: bool
    boundary_sum: object
    budget: object
    partition_ok: bool
    parts: list = field(default_factory=list)

    @property
    def unverified(self) -> int:
        return sum(p.status == "unverified" for p in self.parts)


def brute_verify_decomposition(g: WeightedGraph, d: Demands, parts, eps, psi, cap=None) -> VerificationReport:
    """Check both expander-decomposition conditions exactly.

    The budget is ``sum_i w(V_i, V - V_i) <= eps * d(V)``, which counts every
    inter-part edge from both sides. Parts above the cap are ``unverified``
    and do not fail the report.
    """
    cap = DEFAULT.oracle_cap if cap is None else cap
    parts = [tuple(sorted(p)) for p in parts]
    owner = {}
    partition_ok = True
    for i, p in enumerate(parts):
        for v in p:
            if v in owner or not (0 <= v < g.n):
                partition_ok = False
            owner[v] = i
    if len(owner) != g.n:
        partition_ok = False
    boundary = 2 * sum((w for u, v, w in g.edges if owner.get(u) != owner.get(v)), 0)
    budget = eps * d.total
    budget_ok = boundary <= budget
    reports = []
    for p in parts:
        if not p:
            continue
        sub_d = d.restrict(p)
        if sum(x > 0 for x in sub_d.values) <= 1:
            reports.append(PartReport(p, "vacuous"))
            continue
        if len(p) > cap:
            reports.append(PartReport(p, "unverified"))
            continue
        sub, back = induced_subgraph(g, p)
        res = brute_sparsest_cut(sub, sub_d, cap=cap)
        ok = res.best_value >= psi
        reports.append(
            PartReport(p, "pass" if ok else "fail", res.best_value, tuple(back[v] for v in sorted(res.best_set)))
        )
    ok = partition_ok and budget_ok and all(r.status != "fail" for r in reports)
    return VerificationReport(ok, budget_ok, boundary, budget, partition_ok, reports)

