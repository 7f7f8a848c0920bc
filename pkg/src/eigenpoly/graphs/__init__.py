from .automorphism import (
    AutGroup,
    AutomorphismError,
    TransitivityProfile,
    automorphisms,
    is_automorphism,
    transitivity,
)
from .core import DistanceResult, Graph, GraphError, distances
from .generators import NAMED, generate, parse_generator_spec
from .io import (
    from_json,
    graph_from_dict,
    graph_to_dict,
    parse_graph,
    to_edge_list,
    to_graph6,
    to_json,
)

__all__ = [
    "AutGroup",
    "AutomorphismError",
    "DistanceResult",
    "Graph",
    "GraphError",
    "NAMED",
    "TransitivityProfile",
    "automorphisms",
    "distances",
    "from_json",
    "generate",
    "graph_from_dict",
    "graph_to_dict",
    "is_automorphism",
    "parse_generator_spec",
    "parse_graph",
    "to_edge_list",
    "to_graph6",
    "to_json",
    "transitivity",
]
