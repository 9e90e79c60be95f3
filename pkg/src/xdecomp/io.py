"""Plain-text graph, demand and partition formats, and JSON certificates.

Numbers are read exactly: ``5``, ``2.5``, ``1e3`` and ``7/3`` all parse to
rationals, and are written back as integers, finite decimals, or ``p/q``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import DuplicateEntry, MalformedLine, NegativeDemand, NonPositiveWeight, OutOfRange, SelfLoop
from .graph import Demands, WeightedGraph


def parse_number(tok: str, line=None):
    try:
        x = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise MalformedLine(f"not a number: {tok!r}", line) from None
    return int(x) if x.denominator == 1 else x


def format_number(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    q = x.denominator
    twos = fives = 0
    while q % 2 == 0:
        q //= 2
        twos += 1
    while q % 5 == 0:
        q //= 5
        fives += 1
    if q != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    scaled = abs(x.numerator) * (10 ** digits // x.denominator)
    s = str(scaled).rjust(digits + 1, "0")
    sign = "-" if x < 0 else ""
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body.split()


def _ints(parts, no):
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise MalformedLine(f"expected integers, got {' '.join(parts)!r}", no) from None


def loads_graph(text: str):
    """Parse graph text; returns ``(graph, scale)`` with scale the minimum edge weight."""
    rows = list(_lines(text))
    if not rows:
        raise MalformedLine("missing 'n m' header", 1)
    no, head = rows[0]
    if len(head) != 2:
        raise MalformedLine("header must be 'n m'", no)
    n, m = _ints(head, no)
    if n < 0 or m < 0:
        raise MalformedLine("negative size in header", no)
    edges = []
    for no, parts in rows[1:]:
        if len(parts) != 3:
            raise MalformedLine("edge line must be 'u v w'", no)
        u, v = _ints(parts[:2], no)
        w = parse_number(parts[2], no)
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRange(f"vertex out of range 0..{n - 1}", no)
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}", no)
        if w <= 0:
            raise NonPositiveWeight(f"weight {parts[2]} is not positive", no)
        edges.append((u, v, w))
    if len(edges) != m:
        raise MalformedLine(f"header declares {m} edges, found {len(edges)}", no)
    g = WeightedGraph.from_edges(n, edges)
    scale = g.min_weight()
    return g, 1 if scale is None else scale


def parse_graph(path):
    return loads_graph(Path(path).read_text())


def dumps_graph(g: WeightedGraph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v} {format_number(w)}" for u, v, w in g.edges)
    return "\n".join(out) + "\n"


def write_graph(g: WeightedGraph, path) -> None:
    Path(path).write_text(dumps_graph(g))


def loads_demands(text: str, n: int) -> Demands:
    """``v d`` lines; vertices not listed get demand 0."""
    vals = [0] * n
    seen = set()
    for no, parts in _lines(text):
        if len(parts) != 2:
            raise MalformedLine("demand line must be 'v d'", no)
        (v,) = _ints(parts[:1], no)
        x = parse_number(parts[1], no)
        if not 0 <= v < n:
            raise OutOfRange(f"vertex {v} out of range 0..{n - 1}", no)
        if v in seen:
            raise DuplicateEntry(f"vertex {v} listed twice", no)
        if x < 0:
            raise NegativeDemand(f"demand {parts[1]} is negative", no)
        seen.add(v)
        vals[v] = x
    return Demands(tuple(vals))


def parse_demands(path, n: int) -> Demands:
    return loads_demands(Path(path).read_text(), n)


def dumps_demands(d: Demands) -> str:
    return "".join(f"{v} {format_number(x)}\n" for v, x in enumerate(d.values))


def dumps_partition(parts) -> str:
    return "".join(" ".join(str(x) for x in (i, *sorted(p))) + "\n" for i, p in enumerate(parts))


def loads_partition(text: str) -> list:
    """Parts in file order. Range and coverage are left to the verifier."""
    parts = []
    for no, toks in _lines(text):
        nums = _ints(toks, no)
        if nums[0] != len(parts):
            raise MalformedLine(f"expected part id {len(parts)}, got {nums[0]}", no)
        parts.append(tuple(nums[1:]))
    return parts


def read_partition(path) -> list:
    return loads_partition(Path(path).read_text())


def jsonable(x):
    if isinstance(x, Fraction):
        return format_number(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, frozenset, set)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    return x


def dumps_json(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=1) + "\n"
