"""Integer programs with two nonzeros per row, solved over signed-graph decompositions."""
from .matrix import IPInstance, TwoNonzeroMatrix, check_dmod_bounds, to_rooted_signed_graph
from .sgraph import RootedSignedGraph, ocp_exact, shift_at

__version__ = "0.1.0"

__all__ = ["IPInstance", "RootedSignedGraph", "TwoNonzeroMatrix", "check_dmod_bounds",
           "ocp_exact", "shift_at", "to_rooted_signed_graph"]
