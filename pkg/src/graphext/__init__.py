"""Decide full-corner embeddability of graph C*-algebras of 1-sink extensions.

The decision is made from combinatorial data alone: Wojciech vectors, maximal
tails, sink closures and quotient graphs, and class equality in cokernels of
exact integer matrices.
"""

from graphext.decide import Decision, decide, decide_auto, decide_essential, decide_general
from graphext.extension import (
    InvalidExtension,
    OneSinkExtension,
    analyze,
    block_decomposition,
    boundary,
    closure_of_sink,
    extension_from_parts,
    inessential_part,
    is_essential,
    is_totally_inessential,
    n_vector,
    quotient_graph,
    sink_path_space_finite,
    validate_extension,
    wojciech_vector,
)
from graphext.graph import (
    Edge,
    Graph,
    GraphError,
    build_graph,
    condition_K,
    condition_L,
    count_paths,
    edge_matrix,
    reaches,
    sinks,
    source_matrix,
    sources,
    vertex_matrix,
    vertices_on_cycles,
)
from graphext.intlinalg import (
    IntMatrix,
    classes_equal,
    coker_class,
    coker_invariants,
    in_image,
    induced_cokernel_map_check,
    smith_normal_form,
)
from graphext.io import Problem, parse_problem
from graphext.tails import is_maximal_tail, maximal_tails, saturated_closure

__all__ = [
    "Decision",
    "decide",
    "decide_auto",
    "decide_essential",
    "decide_general",
    "InvalidExtension",
    "OneSinkExtension",
    "analyze",
    "block_decomposition",
    "boundary",
    "closure_of_sink",
    "extension_from_parts",
    "inessential_part",
    "is_essential",
    "is_totally_inessential",
    "n_vector",
    "quotient_graph",
    "sink_path_space_finite",
    "validate_extension",
    "wojciech_vector",
    "Edge",
    "Graph",
    "GraphError",
    "build_graph",
    "condition_K",
    "condition_L",
    "count_paths",
    "edge_matrix",
    "reaches",
    "sinks",
    "source_matrix",
    "sources",
    "vertex_matrix",
    "vertices_on_cycles",
    "IntMatrix",
    "classes_equal",
    "coker_class",
    "coker_invariants",
    "in_image",
    "induced_cokernel_map_check",
    "smith_normal_form",
    "Problem",
    "parse_problem",
    "is_maximal_tail",
    "maximal_tails",
    "saturated_closure",
]

__version__ = "0.1.0"
