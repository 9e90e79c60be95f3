"""Tunable constants. The algorithms hide these inside O(.) bounds; here they are explicit."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace

DEFAULT_ORACLE_CAP = 16


def _env_oracle_cap() -> int:
    raw = os.environ.get("XDECOMP_ORACLE_CAP")
    return int(raw) if raw else DEFAULT_ORACLE_CAP


@dataclass(frozen=True)
class Config:
    # brute-force enumeration limit (vertices)
    oracle_cap: int = DEFAULT_ORACLE_CAP
    # most-balanced cut is solved exactly below this many edges
    base_edges: int = 64
    # tree count t = ceil(m0^(1/r) * log(m)^c_t * log(U)^2), capped at t_max
    c_t: float = 2.0
    t_max: int = 16
    # core size j = ceil(core_scale * m * log(m)^core_exp * log(U) / t)
    core_exp: float = 2.0
    core_scale: float = 1.0
    # a-priori bounds on sparsifier distortion and tree-packing congestion;
    # measured certificates exceeding them are flagged in the trace
    alpha_bound: float = 2.0
    beta_scale: float = 2.0
    # exponent constant in (log mU)^(c1 r^3)
    c1: float = 1.0
    # constant c in psi = eps / (c * alpha * log mU)
    c_budget: float = 4.0
    max_restarts: int = 6
    # sparsifier distortion is computed by full cut enumeration up to this size
    sparsify_exact_cap: int = 14
    sparsify_samples: int = 2000
    threads: int = 1

    @classmethod
    def from_env(cls, **overrides) -> "Config":
        return cls(oracle_cap=_env_oracle_cap(), **overrides)

    def with_(self, **changes) -> "Config":
        return replace(self, **changes)

    def beta_bound(self, m: int) -> float:
        return self.beta_scale * max(1.0, math.log2(max(2, m)))


DEFAULT = Config.from_env()
