"""Exact dissociation-set counting, extremal graph families and verification."""

from .counting import (
    DissocPolynomial,
    MemoTable,
    count_brute,
    count_recursive,
    dissociation_polynomial,
    enumerate_dissociation_sets,
    is_dissociation_set,
    path_count,
)
from .families import FamilySpec, f_closed, h_closed, make_F, make_T, make_U, star_product
from .graph import (
    Graph,
    Graph6Error,
    GraphError,
    VertexSet,
    are_false_twins,
    are_true_twins,
    closed_neighborhood,
    components,
    cycle_space_dim,
    delete_edge,
    delete_vertices,
    emit_graph6,
    new_graph,
    parse_graph6,
)
from .iso import are_isomorphic, canonical_code, generate_trees, generate_unicyclic, read_graph6_stream

__version__ = "0.1.0"
