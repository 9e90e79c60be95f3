"""Generated graph families and a wall-clock harness with a log-log report."""

from __future__ import annotations

import csv
import random
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from .config import DEFAULT, Config
from .graph import Demands, WeightedGraph

FAMILIES = ("path", "cycle", "dumbbell", "random")


def path_graph(n: int) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(i, i + 1, 1) for i in range(n - 1)])


def cycle_graph(n: int) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(i, (i + 1) % n, 1) for i in range(n)])


def dumbbell_graph(k: int, inner=1, bridge=1) -> WeightedGraph:
    """Two k-cliques joined by one edge between vertex k-1 and vertex k."""
    edges = []
    for off in (0, k):
        edges += [(off + a, off + b, inner) for a in range(k) for b in range(a + 1, k)]
    edges.append((k - 1, k, bridge))
    return WeightedGraph.from_edges(2 * k, edges)


def random_graph(n: int, m: int, seed: int = 0, wmax: int = 16) -> WeightedGraph:
    """Connected: a random spanning tree plus extra random edges, weights in [1, wmax]."""
    rng = random.Random(seed)
    edges = [(i, rng.randrange(i), rng.randint(1, wmax)) for i in range(1, n)]
    seen = {(min(u, v), max(u, v)) for u, v, _ in edges}
    target = min(m, n * (n - 1) // 2)
    while len(seen) < target:
        u, v = rng.randrange(n), rng.randrange(n)
        key = (min(u, v), max(u, v))
        if u != v and key not in seen:
            seen.add(key)
            edges.append((u, v, rng.randint(1, wmax)))
    return WeightedGraph.from_edges(n, edges)


def family_graph(family: str, size: int, seed: int = 0) -> WeightedGraph:
    """``size`` is roughly the edge count."""
    if family == "path":
        return path_graph(size + 1)
    if family == "cycle":
        return cycle_graph(max(3, size))
    if family == "dumbbell":
        k = 2
        while k * (k - 1) + 1 < size:
            k += 1
        return dumbbell_graph(k)
    if family == "random":
        n = max(4, size // 4)
        return random_graph(n, size, seed=seed)
    raise ValueError(f"unknown family {family!r}")


def run_bench(family: str, sizes, op: str = "balcutprune", psi=Fraction(1, 2), r: int = 3, eps=Fraction(1, 2), config: Config = DEFAULT):
    """Time one operation per size; returns rows ``(m, n, seconds, outcome)``."""
    from .decomp import expander_decomposition
    from .prune import bal_cut_prune

    rows = []
    for size in sizes:
        g = family_graph(family, size, seed=size)
        d = Demands.degree(g)
        t0 = time.perf_counter()
        if op == "decompose":
            out = f"k={expander_decomposition(g, d, eps, r, config).k}"
        else:
            out = bal_cut_prune(g, d, psi, r, config).case
        rows.append((g.m, g.n, time.perf_counter() - t0, out))
    return rows


def fitted_exponent(rows):
    """Least-squares slope of log(time) against log(m); None with fewer than two sizes."""
    pts = [(m, s) for m, _, s, _ in rows if m > 0 and s > 0]
    if len(pts) < 2:
        return None
    x = np.log([p[0] for p in pts])
    y = np.log([p[1] for p in pts])
    return float(np.polyfit(x, y, 1)[0])


def write_report(rows, out_dir, family: str) -> dict:
    """Write ``bench_<family>.csv`` and ``bench_<family>.png``; return the paths and slope."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"bench_{family}.csv"
    with csv_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "n", "seconds", "outcome"])
        for m, n, s, o in rows:
            w.writerow([m, n, f"{s:.6f}", o])
    slope = fitted_exponent(rows)
    fig, ax = plt.subplots(figsize=(5, 4))
    ms = [r[0] for r in rows]
    ts = [max(r[2], 1e-9) for r in rows]
    ax.loglog(ms, ts, "o-", label="measured")
    if slope is not None:
        ref = ts[0] * (np.array(ms, dtype=float) / ms[0]) ** slope
        ax.loglog(ms, ref, "--", label=f"fit: m^{slope:.2f}")
    ax.set_xlabel("edges m")
    ax.set_ylabel("wall time (s)")
    ax.set_title(f"{family} family")
    ax.legend()
    fig.tight_layout()
    png_path = out / f"bench_{family}.png"
    fig.savefig(png_path, dpi=100)
    plt.close(fig)
    return {"csv": str(csv_path), "figure": str(png_path), "exponent": slope}
