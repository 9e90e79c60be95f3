"""Deterministic expander decomposition of edge-weighted graphs with vertex demands."""

from .balcut import BalCutParams, MostBalancedCut, theorem_parameters, weighted_bal_cut
from .config import DEFAULT, Config
from .decomp import Decomposition, expander_decomposition, verify
from .errors import (
    AllZeroDemand,
    DegenerateSide,
    Disconnected,
    InputError,
    NotATree,
    PromiseViolated,
    TooLarge,
    XDecompError,
)
from .graph import Cut, Demands, DemandVector, WeightedGraph, cut_weight, d_sparsity
from .jtree import JTree, JTreeDistribution, decompose, verify_jtree
from .oracle import brute_most_balanced, brute_sparsest_cut, brute_verify_decomposition
from .prune import PruneResult, TrimParams, bal_cut_prune, trim
from .sparsify import SparsifierCertificate, sparsify
from .treecut import RootedTree, find_centroid_root, rooted_tree_bal_cut

__version__ = "0.1.0"

__all__ = [
    "BalCutParams",
    "MostBalancedCut",
    "theorem_parameters",
    "weighted_bal_cut",
    "DEFAULT",
    "Config",
    "Decomposition",
    "expander_decomposition",
    "verify",
    "AllZeroDemand",
    "DegenerateSide",
    "Disconnected",
    "InputError",
    "NotATree",
    "PromiseViolated",
    "TooLarge",
    "XDecompError",
    "Cut",
    "Demands",
    "DemandVector",
    "WeightedGraph",
    "cut_weight",
    "d_sparsity",
    "JTree",
    "JTreeDistribution",
    "decompose",
    "verify_jtree",
    "brute_most_balanced",
    "brute_sparsest_cut",
    "brute_verify_decomposition",
    "PruneResult",
    "TrimParams",
    "bal_cut_prune",
    "trim",
    "SparsifierCertificate",
    "sparsify",
    "RootedTree",
    "find_centroid_root",
    "rooted_tree_bal_cut",
]
