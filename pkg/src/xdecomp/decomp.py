"""Expander decomposition by repeated cut-or-prune over active clusters."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .config import DEFAULT, Config
from .errors import AllZeroDemand
from .graph import Demands, WeightedGraph, components, induced_subgraph, log2_mu
from .oracle import brute_verify_decomposition
from .prune import bal_cut_prune, declared_alpha, gap_factor


@dataclass
class Decomposition:
    parts: list
    deleted_edge_weight: object
    psi_achieved: object
    iterations: int
    per_part_certificates: list = field(default_factory=list)
    eps: object = None
    c: object = None
    restarts: int = 0
    active_peaks: list = field(default_factory=list)  # max active demand before each iteration
    flags: list = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.parts)

    def part_of(self) -> list:
        owner = [None] * sum(len(p) for p in self.parts)
        for i, p in enumerate(self.parts):
            for v in p:
                owner[v] = i
        return owner


def decomposition_psi(g: WeightedGraph, eps, r: int, c, config: Config = DEFAULT):
    """``eps / (c * alpha * log2(mU))`` with alpha the declared cut-or-prune factor on g."""
    alpha = declared_alpha(gap_factor(g, r, config), r)
    return Fraction(eps) / (Fraction(c) * alpha * Fraction(log2_mu(g)).limit_denominator(1000))


def _split(g, cluster):
    sub, back = induced_subgraph(g, cluster)
    return [tuple(back[v] for v in comp) for comp in components(sub)]


def _run_once(g, d, psi, r, config, trace):
    active = []
    done = []  # (part, certificate)
    for comp in map(tuple, components(g)):
        if d.of(comp) > 0:
            active.append(comp)
        else:
            done.append((comp, {"source": "zero_demand"}))
    iterations = 0
    peaks = []
    flags = []

    def work(cluster):
        sub, back = induced_subgraph(g, cluster)
        sd = d.restrict(back)
        res = bal_cut_prune(sub, sd, psi, r, config, trace=trace)
        return back, res

    pool = ThreadPoolExecutor(config.threads) if config.threads > 1 else None
    try:
        while active:
            iterations += 1
            active.sort(key=lambda c: c[0])
            peaks.append(max(d.of(c) for c in active))
            results = list(pool.map(work, active)) if pool else [work(c) for c in active]
            nxt = []
            for back, res in results:
                flags.extend(res.flags)
                A = tuple(sorted(back[v] for v in res.A))
                B = tuple(sorted(back[v] for v in res.B))
                if res.case == "Cut":
                    pending = [A, B]
                else:
                    done.append(
                        (
                            A,
                            {
                                "source": "prune",
                                "reason": res.reason,
                                "alpha_emp": str(res.alpha_emp),
                                "alpha_declared": str(res.alpha_declared),
                                "trim": res.certificate,
                            },
                        )
                    )
                    pending = [B] if B else []
                for c in pending:
                    for comp in _split(g, c):
                        if d.of(comp) > 0:
                            nxt.append(comp)
                        else:
                            done.append((comp, {"source": "zero_demand"}))
            active = nxt
    finally:
        if pool:
            pool.shutdown()
    done.sort(key=lambda pc: pc[0][0])
    parts = [p for p, _ in done]
    certs = [dict(c, part=list(p)) for p, c in done]
    owner = {}
    for i, p in enumerate(parts):
        for v in p:
            owner[v] = i
    deleted = sum((w for u, v, w in g.edges if owner[u] != owner[v]), 0)
    return parts, certs, deleted, iterations, peaks, sorted(set(flags))


def expander_decomposition(
    g: WeightedGraph,
    d: Demands,
    eps,
    r: int = 1,
    config: Config = DEFAULT,
    psi=None,
    trace: list | None = None,
) -> Decomposition:
    """Partition V into parts of d-sparsity at least psi, deleting at most eps*d(V)/2 weight.

    ``psi`` defaults to ``eps / (c * alpha * log2(mU))``. When the exact budget
    check ``2 * deleted <= eps * d(V)`` fails, c is doubled and the run repeated
    up to ``config.max_restarts`` times. An explicit ``psi`` disables restarts.
    """
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    if not d.total > 0:
        raise AllZeroDemand("all demands are zero")
    fixed = psi is not None
    c = Fraction(repr(config.c_budget))
    restarts = 0
    while True:
        p = psi if fixed else decomposition_psi(g, eps, r, c, config)
        parts, certs, deleted, its, peaks, flags = _run_once(g, d, p, r, config, trace)
        dec = Decomposition(parts, deleted, p, its, certs, eps, None if fixed else c, restarts, peaks, flags)
        if 2 * deleted <= eps * d.total:
            return dec
        if fixed or restarts >= config.max_restarts:
            dec.flags = sorted(set(dec.flags) | {"budget_exceeded"})
            return dec
        c *= 2
        restarts += 1


def verify(g: WeightedGraph, d: Demands, dec: Decomposition, eps=None, psi=None, cap=None):
    """Exact check of a decomposition; also cross-checks the recorded deleted weight."""
    eps = dec.eps if eps is None else eps
    psi = dec.psi_achieved if psi is None else psi
    rep = brute_verify_decomposition(g, d, dec.parts, eps, psi, cap=cap)
    if rep.boundary_sum != 2 * dec.deleted_edge_weight:
        rep = replace(rep, ok=False, budget_ok=False)
    return rep
