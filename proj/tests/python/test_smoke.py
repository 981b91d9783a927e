import json

import pytest

import factorforge as ff


def test_packing_and_certificate():
    k4 = ff.MultiGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    packed = ff.pack_spanning_trees(k4, list(range(6)), 2)
    assert packed["packed"]
    assert sorted(sum(packed["trees"], [])) == list(range(6))

    c4 = ff.MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    refuted = ff.pack_spanning_trees(c4, [0, 1, 2, 3], 2)
    assert not refuted["packed"]
    assert refuted["partition"] == [[0], [1], [2], [3]]
    assert refuted["cross_edges"] == 4
    assert ff.is_m_tree_connected(c4, [0, 1, 2, 3], 1)


def test_graph_queries():
    bowtie = ff.MultiGraph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert ff.cut_vertices(bowtie, list(range(6))) == [2]
    assert ff.degree_profile(bowtie, [0, 1]) == [1, 2, 1, 0, 0]
    assert ff.connected_components(bowtie, [0, 4]) == [[0, 1], [2], [3, 4]]
    assert bowtie.edge_count == 6
    assert bowtie.edges[3] == (2, 3)


def test_connected_extension_of_path():
    path = ff.MultiGraph(4, [(0, 1), (1, 2), (2, 3)])
    result = ff.connected_extend(path, [0, 2], [0, 1, 2], matching=[0, 2])
    assert result["h"] == [0, 1, 2]
    for step in result["trace"]:
        assert step["measure_after"] < step["measure_before"]


def test_tree_connected_factor_on_k4():
    k4 = ff.MultiGraph(4, [(0, 1), (1, 2), (2, 3), (1, 3), (3, 0), (0, 2)])
    result = ff.tree_connected_factor(k4, [0, 1, 2, 4], list(range(6)), [2] * 4, [2] * 4, [3] * 4, 2)
    assert result["h"] == list(range(6))


def test_errors_map_to_python_exceptions():
    with pytest.raises(ff.InvalidInput):
        ff.MultiGraph(2, [(0, 0)])
    path = ff.MultiGraph(3, [(0, 1), (1, 2)])
    with pytest.raises(ff.PreconditionViolation):
        ff.connected_extend(path, [], [0])
    with pytest.raises(ff.FactorForgeError):
        ff.minimal_tree_connected_subgraph(path, [0, 1], 2, 0, 2)


def test_generated_instance_round_trip():
    inst = ff.generate_instance(5, 7, "planted-tree-factor", 1)
    assert inst == ff.generate_instance(5, 7, "planted-tree-factor", 1)
    graph = ff.graph_from_instance(inst)
    result = ff.connected_extend(graph, inst["factor"], inst["tree_factor"], matching=inst["matching"])
    overall, checks = ff.check_solution(inst, result["h"], "connected-extend")
    assert overall, checks


def test_cli_entry_point():
    code, out, _ = ff.run_cli(["gen", "--seed", "3", "--n", "5"])
    assert code == 0
    assert json.loads(out)["n"] == 5
    code, _, err = ff.run_cli(["pack"])
    assert code == 2
    assert err
