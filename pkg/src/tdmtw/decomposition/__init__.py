"""Tree decompositions, their protected variants, converters and decomposers."""
from .exact import EXACT_KFREE_LIMIT, exact_kfree_decomposition, exact_kfree_tw, kfree_from_free_set
from .heuristic import HeuristicResult, decompose_heuristic, kfree_heuristic, tame_heuristic
from .transform import (
    compose_tdm,
    compress_bags,
    delete_vertex,
    extract_from_tdm,
    lift_series_vertices,
    single_bag_tame,
    suppress_series_vertices,
    uncontract_subdivision,
)
from .treewidth import treewidth_exact
from .types import (
    DecompositionError,
    KFreeDecomposition,
    TameOCPDecomposition,
    TDMDecomposition,
    TreeDecomposition,
    Violation,
    is_valid,
    kfree_raw_width,
    kind_of,
    require_valid,
    validate,
    width,
)

__all__ = [
    "EXACT_KFREE_LIMIT", "DecompositionError", "HeuristicResult", "KFreeDecomposition",
    "TDMDecomposition", "TameOCPDecomposition", "TreeDecomposition", "Violation",
    "compose_tdm", "compress_bags", "decompose_heuristic", "delete_vertex",
    "exact_kfree_decomposition", "exact_kfree_tw", "extract_from_tdm", "is_valid",
    "kfree_from_free_set", "kfree_heuristic", "kfree_raw_width", "kind_of", "lift_series_vertices",
    "require_valid", "single_bag_tame", "suppress_series_vertices", "tame_heuristic", "treewidth_exact", "uncontract_subdivision",
    "validate", "width",
]
