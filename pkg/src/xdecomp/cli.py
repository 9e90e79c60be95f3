"""Command-line front end.

Exit codes: 0 success, 1 a result failed its own contract check, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .bench import FAMILIES, run_bench, write_report
from .config import Config
from .errors import AllZeroDemand, Disconnected, InputError, NotATree, XDecompError
from .graph import Demands, cut_weight
from .io import dumps_json, dumps_partition, format_number, parse_demands, parse_graph, read_partition


def _ratio_arg(s: str) -> Fraction:
    try:
        x = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
    if x <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _sizes_arg(s: str) -> list:
    try:
        return [int(float(x)) for x in s.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {s!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="xdecomp", description="Expander decomposition of weighted graphs with vertex demands.")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", required=True, help="graph file: 'n m' header then 'u v w' lines")
    common.add_argument("--demands", default="degree", help="'degree' (default), 'unit', or a file of 'v d' lines")
    common.add_argument("--out-dir", help="write result files here")
    common.add_argument("--json", action="store_true", help="print the summary as JSON")
    common.add_argument("--trace", help="write per-call records of the balanced-cut recursion as JSON lines")

    tune = argparse.ArgumentParser(add_help=False)
    tune.add_argument("--threads", type=int)
    tune.add_argument("--oracle-cap", type=int)
    tune.add_argument("--c1", type=float)
    tune.add_argument("--c-t", type=float)
    tune.add_argument("--c-budget", type=float)
    tune.add_argument("--timing", action="store_true", help="include wall time in the summary")

    s = sub.add_parser("decompose", parents=[common, tune], help="(eps, psi)-expander decomposition")
    s.add_argument("--eps", type=_ratio_arg, required=True)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--psi", type=_ratio_arg, help="fix psi instead of deriving it from eps")

    s = sub.add_parser("balcutprune", parents=[common, tune], help="balanced sparse cut or certified large expander")
    s.add_argument("--psi", type=_ratio_arg, required=True)
    s.add_argument("--r", type=int, default=1)

    s = sub.add_parser("balcut", parents=[common, tune], help="most-balanced sparse cut")
    s.add_argument("--psi", type=_ratio_arg, required=True)
    s.add_argument("--psi-star", type=_ratio_arg, required=True)
    s.add_argument("--b", type=_ratio_arg, default=Fraction(18))
    s.add_argument("--r", type=int, default=1)

    s = sub.add_parser("treecut", parents=[common, tune], help="greedy balanced cut of a tree")
    s.add_argument("--psi", type=_ratio_arg, required=True)

    s = sub.add_parser("verify", parents=[common, tune], help="exact check of a partition")
    s.add_argument("--partition", required=True)
    s.add_argument("--eps", type=_ratio_arg, required=True)
    s.add_argument("--psi", type=_ratio_arg, required=True)

    s = sub.add_parser("bench", parents=[tune], help="time a generated family; CSV plus log-log figure")
    s.add_argument("--family", choices=FAMILIES, required=True)
    s.add_argument("--sizes", type=_sizes_arg, default=[1000, 10000, 100000])
    s.add_argument("--op", choices=("balcutprune", "decompose"), default="balcutprune")
    s.add_argument("--psi", type=_ratio_arg, default=Fraction(1, 2))
    s.add_argument("--eps", type=_ratio_arg, default=Fraction(1, 2))
    s.add_argument("--r", type=int, default=3)
    s.add_argument("--out-dir", default=".")
    return p


def _config(args) -> Config:
    cfg = Config.from_env()
    changes = {}
    for flag, name in (("threads", "threads"), ("oracle_cap", "oracle_cap"), ("c1", "c1"), ("c_t", "c_t"), ("c_budget", "c_budget")):
        val = getattr(args, flag, None)
        if val is not None:
            changes[name] = val
    return cfg.with_(**changes) if changes else cfg


def _load(args):
    g, _ = parse_graph(args.graph)
    if args.demands == "degree":
        d = Demands.degree(g)
    elif args.demands == "unit":
        d = Demands.uniform(g.n)
    else:
        d = parse_demands(args.demands, g.n)
    return g, d


def _emit(args, summary: dict, files: dict) -> None:
    if args.json:
        sys.stdout.write(dumps_json(summary))
        summary_text = dumps_json(summary)
    else:
        summary_text = "".join(f"{k} {_fmt(v)}\n" for k, v in summary.items())
        sys.stdout.write(summary_text)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        files = dict(files)
        files["summary.json" if args.json else "summary.txt"] = summary_text
        for name, text in files.items():
            (out / name).write_text(text)


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return format_number(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v) if v else "-"
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def _write_trace(args, trace) -> None:
    if args.trace:
        with open(args.trace, "w") as fh:
            for rec in trace:
                fh.write(json.dumps(rec.as_dict(), sort_keys=True) + "\n")


def cmd_decompose(args, cfg) -> int:
    from .decomp import expander_decomposition, verify

    g, d = _load(args)
    trace = [] if args.trace else None
    t0 = time.perf_counter()
    dec = expander_decomposition(g, d, args.eps, args.r, cfg, psi=args.psi, trace=trace)
    elapsed = time.perf_counter() - t0
    rep = verify(g, d, dec, args.eps, dec.psi_achieved, cap=cfg.oracle_cap)
    summary = {
        "k": dec.k,
        "deleted_weight": dec.deleted_edge_weight,
        "psi": dec.psi_achieved,
        "iterations": dec.iterations,
        "restarts": dec.restarts,
        "verified": "yes" if rep.ok else "no",
        "unverified_parts": rep.unverified,
        "flags": dec.flags,
    }
    if args.timing:
        summary["wall_time"] = elapsed
    cert = {
        "eps": args.eps,
        "psi": dec.psi_achieved,
        "c": dec.c,
        "deleted_edge_weight": dec.deleted_edge_weight,
        "iterations": dec.iterations,
        "active_peaks": dec.active_peaks,
        "parts": dec.per_part_certificates,
    }
    _write_trace(args, trace or [])
    _emit(args, summary, {"partition.txt": dumps_partition(dec.parts), "certificate.json": dumps_json(cert)})
    return 0 if rep.ok and not dec.flags else 1


def cmd_balcutprune(args, cfg) -> int:
    from .prune import bal_cut_prune

    g, d = _load(args)
    trace = [] if args.trace else None
    res = bal_cut_prune(g, d, args.psi, args.r, cfg, trace=trace)
    summary = {
        "case": res.case,
        "reason": res.reason,
        "demand_A": d.of(res.A),
        "demand_B": d.of(res.B),
        "cut_weight": res.cut_weight,
        "alpha_emp": res.alpha_emp,
        "alpha_declared": res.alpha_declared,
        "flags": res.flags,
    }
    cert = dict(summary, psi=args.psi, A=sorted(res.A), B=sorted(res.B), trim=res.certificate)
    _write_trace(args, trace or [])
    _emit(args, summary, {"partition.txt": dumps_partition([sorted(res.A), sorted(res.B)]), "certificate.json": dumps_json(cert)})
    recomputed = cut_weight(g, res.B) == res.cut_weight and res.A | res.B == frozenset(range(g.n)) and not res.A & res.B
    return 0 if res.ok and recomputed else 1


def cmd_balcut(args, cfg) -> int:
    from .balcut import BalCutParams, tree_count, weighted_bal_cut

    g, d = _load(args)
    trace = [] if args.trace else None
    t = tree_count(max(1, g.m), g.m, g.capacity_ratio(), args.r, cfg)
    params = BalCutParams(args.psi, args.psi_star, args.b, args.r, max(1, g.m), t=t)
    res = weighted_bal_cut(g, d, params, cfg, trace=trace)
    side = sorted(res.side)
    summary = {
        "size": len(side),
        "demand": res.demand,
        "sparsity": "-" if res.sparsity is None else res.sparsity,
        "provenance": res.provenance,
        "side": side,
    }
    _write_trace(args, trace or [])
    rest = sorted(set(range(g.n)) - set(side))
    _emit(args, summary, {"partition.txt": dumps_partition([side, rest])})
    ok = not side or (2 * res.demand <= d.total and cut_weight(g, side) <= args.psi * res.demand)
    return 0 if ok else 1


def cmd_treecut(args, cfg) -> int:
    from .treecut import RootedTree, find_centroid_root, rooted_tree_bal_cut

    g, d = _load(args)
    if not g.is_tree():
        raise NotATree("treecut needs a tree")
    rt = RootedTree.build(g, d, find_centroid_root(g, d))
    res = rooted_tree_bal_cut(rt, args.psi)
    side = sorted(res.side)
    din = d.of(side)
    low = min(din, d.total - din)
    summary = {
        "root": rt.root,
        "size": len(side),
        "demand": din,
        "cut_weight": cut_weight(g, side),
        "operations": res.operations,
        "side": side,
    }
    _emit(args, summary, {"partition.txt": dumps_partition([side, sorted(set(range(g.n)) - set(side))])})
    ok = not side or (low > 0 and cut_weight(g, side) <= 6 * args.psi * low)
    return 0 if ok else 1


def cmd_verify(args, cfg) -> int:
    from .oracle import brute_verify_decomposition

    g, d = _load(args)
    parts = read_partition(args.partition)
    rep = brute_verify_decomposition(g, d, parts, args.eps, args.psi, cap=cfg.oracle_cap)
    summary = {
        "ok": "yes" if rep.ok else "no",
        "partition_ok": "yes" if rep.partition_ok else "no",
        "budget_ok": "yes" if rep.budget_ok else "no",
        "boundary_sum": rep.boundary_sum,
        "budget": rep.budget,
        "failed_parts": [i for i, p in enumerate(rep.parts) if p.status == "fail"],
        "unverified_parts": rep.unverified,
    }
    _emit(args, summary, {})
    return 0 if rep.ok else 1


def cmd_bench(args, cfg) -> int:
    rows = run_bench(args.family, args.sizes, args.op, args.psi, args.r, args.eps, cfg)
    info = write_report(rows, args.out_dir, args.family)
    sys.stdout.write("m,n,seconds,outcome\n")
    for m, n, s, o in rows:
        sys.stdout.write(f"{m},{n},{s:.6f},{o}\n")
    exp = info["exponent"]
    sys.stdout.write(f"# exponent {'-' if exp is None else f'{exp:.3f}'}\n# figure {info['figure']}\n")
    return 0


COMMANDS = {
    "decompose": cmd_decompose,
    "balcutprune": cmd_balcutprune,
    "balcut": cmd_balcut,
    "treecut": cmd_treecut,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except (InputError, NotATree, Disconnected, AllZeroDemand, ValueError, OSError) as e:
        print(f"xdecomp: error: {e}", file=sys.stderr)
        return 2
    except XDecompError as e:
        print(f"xdecomp: contract violation: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
