"""Degree-bounded connected and tree-connected factor construction."""

import json

from ._core import (
    CapacityExceeded,
    FactorForgeError,
    InternalInvariant,
    InvalidInput,
    MultiGraph,
    NotFound,
    PreconditionViolation,
    check_solution_json,
    connected_components,
    connected_extend,
    connected_factor_via_tree,
    cut_vertices,
    degree_profile,
    extend_with_matching_tree,
    find_exchange_edge,
    find_gf_factor,
    generate_instance_json,
    is_m_tree_connected,
    minimal_tree_connected_subgraph,
    pack_spanning_trees,
    run_cli,
    select_extension_matching,
    tree_connected_extend,
    tree_connected_extend_bipartite,
    tree_connected_factor,
)


def generate_instance(seed, n, model="planted-tree-factor", m=1):
    """Seeded instance as a dict in the instance JSON layout."""
    return json.loads(generate_instance_json(seed, n, model, m))


def graph_from_instance(instance):
    return MultiGraph(instance["n"], [tuple(e) for e in instance["edges"]])


def check_solution(instance, h, tag):
    """(overall, [(name, pass, detail), ...]) for a solution h of an instance dict."""
    return check_solution_json(json.dumps(instance), list(h), tag)


__all__ = [name for name in dir() if not name.startswith("_")]
