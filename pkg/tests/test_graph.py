from __future__ import annotations

import random

import numpy as np
import pytest

from ecometa.harvest.graph import (
    DependencyGraph,
    build_dependency_graph,
    pagerank,
    parse_dependency_name,
)
from ecometa.harvest.models import PackageRecord


def _record(name, deps=()):
    return PackageRecord(name=name, dependencies=list(deps))


def test_build_edges_direct():
    graph = build_dependency_graph([_record("a", ["b", "c"]), _record("b"), _record("c")])
    assert graph.edges == {("a", "b"), ("a", "c")}
    assert graph.stubs == set()


def test_specifier_and_marker_stripped():
    # Hand check: name stops at the first specifier character, marker dropped.
    assert parse_dependency_name("requests>=2.0; python_version>'3.8'") == "requests"
    assert parse_dependency_name("pkg [extra1,extra2] (>=1.0)") == "pkg"
    assert parse_dependency_name("Weird_Name.Here==1") == "weird-name-here"
    assert parse_dependency_name(">><<") is None


def test_self_edge_dropped():
    graph = build_dependency_graph([_record("a", ["a"])])
    assert graph.edges == set()


def test_unknown_dependency_becomes_stub():
    graph = build_dependency_graph([_record("a", ["requests>=2.0"])])
    assert graph.stubs == {"requests"}
    assert ("a", "requests") in graph.edges


def test_flagged_records_excluded():
    bad = PackageRecord(name="broken", flag="malformed", dependencies=["a"])
    graph = build_dependency_graph([_record("a"), bad])
    assert graph.nodes == {"a"}


def test_pagerank_three_cycle_uniform():
    graph = DependencyGraph(nodes={"a", "b", "c"}, edges={("a", "b"), ("b", "c"), ("c", "a")})
    scores = pagerank(graph, damping=0.85)
    for value in scores.values():
        assert value == pytest.approx(1.0 / 3.0, abs=1e-9)
    assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)
    assert graph.converged


def _two_node_fixed_point(damping=0.85):
    # Independent oracle: solve the stationary equations of the 2-node chain
    # a -> b with uniform dangling redistribution as a linear system.
    #   a = (1-d)/2 + d*(b/2)
    #   b = (1-d)/2 + d*(a + b/2)
    teleport = (1 - damping) / 2
    m = np.array([[0.0, damping / 2], [damping, damping / 2]])
    solution = np.linalg.solve(np.eye(2) - m, np.array([teleport, teleport]))
    return solution[0], solution[1]


def test_pagerank_two_node_dangling_case():
    graph = DependencyGraph(nodes={"a", "b"}, edges={("a", "b")})
    scores = pagerank(graph, damping=0.85)
    oracle_a, oracle_b = _two_node_fixed_point()
    assert scores["a"] == pytest.approx(oracle_a, abs=1e-9)
    assert scores["b"] == pytest.approx(oracle_b, abs=1e-9)
    # Frozen hand-solved values (20/57, 37/57).
    assert scores["a"] == pytest.approx(0.3509, abs=1e-3)
    assert scores["b"] == pytest.approx(0.6491, abs=1e-3)


def test_pagerank_single_node():
    graph = DependencyGraph(nodes={"only"})
    assert pagerank(graph) == {"only": 1.0}


def test_pagerank_empty_graph():
    assert pagerank(DependencyGraph()) == {}


def test_pagerank_sums_to_one_on_random_graph():
    rng = random.Random(20)
    nodes = {f"n{i}" for i in range(20)}
    edges = {(f"n{rng.randrange(20)}", f"n{rng.randrange(20)}") for _ in range(60)}
    edges = {(a, b) for a, b in edges if a != b}
    graph = DependencyGraph(nodes=nodes, edges=edges)
    scores = pagerank(graph)
    assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)


def test_pagerank_invariant_under_relabeling():
    rng = random.Random(7)
    names = [f"n{i}" for i in range(20)]
    edges = {(rng.choice(names), rng.choice(names)) for _ in range(70)}
    edges = {(a, b) for a, b in edges if a != b}
    graph = DependencyGraph(nodes=set(names), edges=set(edges))
    scores = pagerank(graph)

    shuffled = names[:]
    rng.shuffle(shuffled)
    relabel = dict(zip(names, shuffled))
    permuted = DependencyGraph(
        nodes={relabel[n] for n in names},
        edges={(relabel[a], relabel[b]) for a, b in edges},
    )
    permuted_scores = pagerank(permuted)

    for name in names:
        assert permuted_scores[relabel[name]] == pytest.approx(scores[name], abs=1e-9)
    assert sorted(permuted_scores.values()) == pytest.approx(sorted(scores.values()), abs=1e-9)


def test_pagerank_rejects_bad_parameters():
    graph = DependencyGraph(nodes={"a"})
    with pytest.raises(ValueError):
        pagerank(graph, damping=1.0)
    with pytest.raises(ValueError):
        pagerank(graph, epsilon=0)


def test_graph_json_roundtrip():
    graph = DependencyGraph(nodes={"a", "b"}, edges={("a", "b")}, stubs={"b"})
    pagerank(graph)
    restored = DependencyGraph.from_json(graph.to_json())
    assert restored.nodes == graph.nodes
    assert restored.edges == graph.edges
    assert restored.pagerank == graph.pagerank
