"""Trimming toward an expander, and the cut-or-prune solver built from it."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .balcut import BalCutParams, theorem_parameters, tree_count, weighted_bal_cut
from .config import DEFAULT, Config
from .errors import AllZeroDemand, Disconnected, PromiseViolated
from .graph import Demands, WeightedGraph, _ratio, cut_weight, induced_subgraph, log2_mu
from .oracle import brute_most_balanced_result


@dataclass(frozen=True)
class TrimParams:
    psi: object
    z: object
    z_prime: object
    r: int
    c1: float = 1.0

    def __post_init__(self):
        if not self.psi > 0:
            raise ValueError("psi must be positive")
        if not self.z_prime > 0:
            raise ValueError("z_prime must be positive")

    @property
    def z_star(self):
        return _ratio(self.z_prime, 6 * 3 ** self.r)


@dataclass
class TrimResult:
    X: frozenset
    Y: frozenset
    case: str  # small (residual certified) | balanced
    iterations: int
    removed: list  # demand of each removed piece
    telescoped: object  # sum over pieces of their boundary weight inside the residual


@dataclass
class PruneResult:
    A: frozenset
    B: frozenset
    case: str  # Cut | Prune
    cut_weight: object
    alpha_emp: object
    alpha_declared: object
    psi: object
    reason: str = "trim"
    certificate: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(f in ("contract_violation", "prune_uncertified", "weak_guarantee") for f in self.flags)


def _solved_exactly(g: WeightedGraph, config: Config) -> bool:
    return g.m <= config.base_edges and g.n <= config.oracle_cap


def gap_factor(g: WeightedGraph, r: int, config: Config = DEFAULT):
    """Ratio between the sparsity a trim pass removes and the one it certifies.

    At least ``log2(mU)^(c1 r^3)`` and at least the approximation ratio of the
    balanced-cut solver on ``g`` (1 when it is solved exactly).
    """
    poly = Fraction(log2_mu(g) ** (config.c1 * r ** 3)).limit_denominator(1000)
    if _solved_exactly(g, config):
        s = 1
    else:
        s = theorem_parameters(g.m, g.capacity_ratio(), r, config=config).ratio
    return max(Fraction(1), poly, Fraction(s))


def declared_alpha(gap, r: int):
    """Approximation factor guaranteed by ``bal_cut_prune`` for a given gap factor."""
    return 2 * gap * (8 * gap) ** (r - 1)


def trim(
    g: WeightedGraph,
    d: Demands,
    v_prime,
    tp: TrimParams,
    gap=None,
    config: Config = DEFAULT,
    check_promise: bool = False,
    trace: list | None = None,
) -> TrimResult:
    """Peel off sparse pieces of ``G[v_prime]`` until the rest is close to an expander.

    Each round asks for a most-balanced ``psi/2``-sparse cut of the residual.
    A piece lighter than ``z'/(6*3^r)`` stops the loop with the residual as Y;
    otherwise the piece is removed, and the loop also stops once more than a
    third of ``d(v_prime)`` has been removed.
    """
    v_prime = frozenset(v_prime)
    if 2 * d.of(v_prime) < d.total:
        raise ValueError("trim needs d(V') >= d(V)/2")
    sub_all, _ = induced_subgraph(g, v_prime)
    if gap is None:
        gap = gap_factor(sub_all, tp.r, config)
    if check_promise and len(v_prime) <= config.oracle_cap:
        sub_d = d.restrict(sorted(v_prime))
        worst = brute_most_balanced_result(sub_all, sub_d, tp.psi, cap=config.oracle_cap).best_value
        if worst > tp.z:
            raise PromiseViolated(f"a {tp.psi}-sparse cut of V' has min side {worst} > z = {tp.z}")
    dv = d.of(v_prime)
    z_star = tp.z_star
    b = 6 * 3 ** tp.r
    removed_sets = []
    removed = []
    acc = 0
    telescoped = 0
    residual = set(v_prime)
    iterations = 0
    case = "small"
    while residual:
        iterations += 1
        sub, back = induced_subgraph(g, residual)
        sub_d = d.restrict(back)
        if not sub_d.total > 0:
            break
        half = _ratio(tp.psi, 2)
        U = sub.capacity_ratio()
        params = BalCutParams(half, half / gap, b, tp.r, max(1, sub.m), t=tree_count(max(1, sub.m), sub.m, U, tp.r, config))
        res = weighted_bal_cut(sub, sub_d, params, config, trace=trace, allow_disconnected=True)
        if not res.side or res.demand <= z_star:
            break
        piece = frozenset(back[v] for v in res.side)
        telescoped += cut_weight(sub, res.side)
        removed_sets.append(piece)
        removed.append(res.demand)
        acc += res.demand
        residual -= piece
        if 3 * acc > dv:
            case = "balanced"
            break
    X = frozenset().union(*removed_sets) if removed_sets else frozenset()
    Y = v_prime - X
    if d.of(X) > d.of(Y):
        X, Y = Y, X
    return TrimResult(X, Y, case, iterations, removed, telescoped)


def _prune_schedule(total, dmin, psi, gap, r):
    """Thresholds z_1 = d(V)/2 shrinking geometrically to z_r = dmin, then z' = dmin/2.

    Any cut whose smaller side carries at most dmin/2 carries no demand, so
    the last trim certifies the residual outright.
    """
    half = Fraction(total) / 2
    step = max(float(half / dmin), 1.0) ** (1.0 / r)
    zs = [half]
    for _ in range(1, r):
        zs.append(Fraction(float(zs[-1]) / step).limit_denominator(10 ** 6))
    zps = zs[1:] + [Fraction(dmin) / 2]
    psis = [2 * gap * psi]
    for _ in range(1, r):
        psis.append(8 * gap * psis[-1])
    psis.reverse()
    return zs, zps, psis


def bal_cut_prune(
    g: WeightedGraph,
    d: Demands,
    psi,
    r: int = 1,
    config: Config = DEFAULT,
    trace: list | None = None,
) -> PruneResult:
    """Either a balanced sparse cut (Cut) or a large part certified as a psi-expander (Prune)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if not psi > 0:
        raise ValueError("psi must be positive")
    if not d.total > 0:
        raise AllZeroDemand("all demands are zero")
    if not g.is_connected():
        raise Disconnected("bal_cut_prune needs a connected graph")
    V = frozenset(range(g.n))
    D = d.total
    gap = gap_factor(g, r, config)
    alpha_decl = declared_alpha(gap, r)

    def done(A, B, case, reason, cert, flags):
        A, B = frozenset(A), frozenset(B)
        w = cut_weight(g, B)
        low = min(d.of(A), d.of(B))
        a_emp = _ratio(w, psi * low) if low > 0 else 0
        if low > 0 and w > alpha_decl * psi * low:
            flags.append("weak_guarantee")
        return PruneResult(A, B, case, w, a_emp, alpha_decl, psi, reason, cert, sorted(set(flags)))

    if sum(x > 0 for x in d.values) <= 1:
        return done(V, (), "Prune", "vacuous", [], [])
    wmin = g.min_weight()
    # every demand-carrying cut has weight >= wmin and smaller side <= D/2
    if psi * D <= 2 * wmin:
        return done(V, (), "Prune", "shortcut", [], [])

    dmin = min(x for x in d.values if x > 0)
    zs, zps, psis = _prune_schedule(D, dmin, psi, gap, r)
    current = V
    cert = []
    flags = []
    last_case = None
    for i in range(r):
        tp = TrimParams(psis[i], zs[i], zps[i], r, config.c1)
        res = trim(g, d, current, tp, gap=gap, config=config, trace=trace)
        cert.append(
            {
                "iteration": i + 1,
                "psi": str(tp.psi),
                "z": str(tp.z),
                "z_prime": str(tp.z_prime),
                "case": res.case,
                "rounds": res.iterations,
                "removed_demand": str(d.of(res.X)),
                "telescoped_weight": str(res.telescoped),
                "round_bound": str(_ratio(6 * 3 ** r * tp.z, tp.z_prime)),
            }
        )
        last_case = res.case
        if res.case == "balanced":
            if i == 0:
                return done(res.Y, res.X, "Cut", "trim", cert, flags)
            flags.append("late_balanced_trim")
            current = res.Y
            break
        current = res.Y
        if 2 * d.of(current) < D:
            flags.append("residual_below_half")
    Y = current
    X = V - Y
    if 3 * d.of(X) >= D and 3 * d.of(Y) >= D:
        return done(Y, X, "Cut", "trim", cert, flags)
    if 2 * d.of(Y) >= D:
        if last_case != "small":
            flags.append("prune_uncertified")
        return done(Y, X, "Prune", "trim", cert, flags)
    flags.append("contract_violation")
    return done(Y, X, "Prune", "trim", cert, flags)
