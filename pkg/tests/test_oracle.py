from __future__ import annotations

from fractions import Fraction

import pytest

from bfp_oracle import brute_force_optimum
from conftest import transformed_graph
from maxminlp import (
    ColouredGraph,
    Edge,
    EdgeKind,
    GeneratorParams,
    Instance,
    SizeCapError,
    VertexKind,
    Walk,
    check_feasible,
    check_walk_lemma,
    optimum,
    random_instance,
    serialize_oracle_result,
    utility,
    walk_upper_bound,
)
from walktools import enumerate_walks

K, I = EdgeKind.K, EdgeKind.I


def test_optimum_singleton(singleton):
    result = optimum(singleton)
    assert result.omega_star == 1
    assert result.witness.value("v") == 1


def test_optimum_prelim(prelim):
    assert optimum(prelim).omega_star == Fraction(2, 3)


def test_optimum_isp(isp):
    result = optimum(isp)
    assert result.omega_star == Fraction(5, 7)
    assert check_feasible(isp, result.witness) == []
    assert utility(isp, result.witness) == Fraction(5, 7)
    assert result.iterations >= 1


def test_optimum_respects_cap(isp):
    with pytest.raises(SizeCapError):
        optimum(isp, max_agents=5)


def test_optimum_matches_brute_force_prelim(prelim):
    omega, witness = brute_force_optimum(prelim)
    assert omega == Fraction(2, 3)
    assert optimum(prelim).omega_star == omega
    assert check_feasible(prelim, witness) == []
    assert utility(prelim, witness) == omega


def test_optimum_matches_brute_force_random():
    for seed in range(20):
        n_agents = 1 + seed % 5
        inst = random_instance(
            GeneratorParams(
                n_agents=n_agents, max_vi=3, max_vk=2, max_iv=2, max_kv=1,
                n_parties=max(1, n_agents - 1), n_resources=n_agents, seed=seed,
            )
        )
        omega, _ = brute_force_optimum(inst)
        assert optimum(inst).omega_star == omega


def test_duplicated_party_keeps_optimum():
    for seed in (3, 4):
        inst = random_instance(
            GeneratorParams(
                n_agents=6, max_vi=3, max_vk=2, max_iv=2, max_kv=1,
                n_parties=4, n_resources=6, seed=seed,
            )
        )
        first_label, members = next(iter(inst.parties.items()))
        doubled = Instance(
            inst.agents,
            {**inst.parties, f"{first_label}_copy": members},
            inst.resources,
        )
        assert optimum(doubled).omega_star == optimum(inst).omega_star


def test_walk_bound_prelim_graph(prelim_graph):
    assert walk_upper_bound(prelim_graph) == Fraction(2, 3)


def test_walk_bound_singleton(singleton_graph):
    assert walk_upper_bound(singleton_graph) == 1


def raw_graph(colours, edges):
    vertices = {
        v: VertexKind.X if c == "x" else VertexKind.ZERO for v, c in colours.items()
    }
    edge_objs = tuple(Edge(u, v, kind, f"e{n}") for n, (u, v, kind) in enumerate(edges))
    return ColouredGraph(vertices, edge_objs, {v: v for v in vertices}, frozenset())


def test_walk_bound_alternating_path_without_zeros():
    # a-I-b-K-c-I-d-K-e: the longest I-first K-ending walk has two K-edges.
    graph = raw_graph(
        {v: "x" for v in "abcde"},
        [("a", "b", I), ("b", "c", K), ("c", "d", I), ("d", "e", K)],
    )
    assert walk_upper_bound(graph) == Fraction(3, 2)


def test_walk_bound_short_path_without_zeros():
    graph = raw_graph(
        {v: "x" for v in "wxyz"},
        [("w", "x", K), ("x", "y", I), ("y", "z", K)],
    )
    assert walk_upper_bound(graph) == 2  # single K-edge witness: 1 + 1/1


def test_walk_bound_none_when_no_certificate():
    graph = raw_graph({"u": "x", "w": "x"}, [("u", "w", K)])
    assert walk_upper_bound(graph) is None


def test_walk_bound_dominates_optimum_on_builtins(prelim, isp):
    for inst in (prelim, isp):
        graph, pruned, _ = transformed_graph(inst)
        bound = walk_upper_bound(graph)
        if bound is not None:
            assert bound >= optimum(pruned).omega_star


def test_check_walk_lemma_prelim(prelim_graph, prelim):
    from maxminlp import prune_non_contributing, split_constraints

    pruned, _ = prune_non_contributing(split_constraints(prelim).reduced)
    result = optimum(pruned)
    i1 = next(n for n, e in enumerate(prelim_graph.edges) if e.origin == "i1")
    k2 = next(n for n, e in enumerate(prelim_graph.edges) if e.origin == "k2")
    walk = Walk(("1", "2", "3"), (i1, k2))
    assert check_walk_lemma(prelim_graph, result, [walk]) == []


def test_check_walk_lemma_round_trip_walk(prelim_graph, prelim):
    # A walk returning to its start vertex gives lhs zero, which the lemma
    # covers whenever the bound is nonnegative.
    from maxminlp import prune_non_contributing, split_constraints

    pruned, _ = prune_non_contributing(split_constraints(prelim).reduced)
    result = optimum(pruned)
    i1 = next(n for n, e in enumerate(prelim_graph.edges) if e.origin == "i1")
    k2 = next(n for n, e in enumerate(prelim_graph.edges) if e.origin == "k2")
    i2 = next(n for n, e in enumerate(prelim_graph.edges) if e.origin == "i2")
    k1 = next(n for n, e in enumerate(prelim_graph.edges) if e.origin == "k1")
    walk = Walk(("1", "2", "3", "1", "zero_k1"), (i1, k2, i2, k1))
    assert check_walk_lemma(prelim_graph, result, [walk]) == []


def test_check_walk_lemma_brute_force_two_edge_walks():
    for seed in range(6):
        inst = random_instance(
            GeneratorParams(
                n_agents=5, max_vi=2, max_vk=2, max_iv=2, max_kv=1,
                n_parties=4, n_resources=5, seed=seed + 200,
            )
        )
        graph, pruned, _ = transformed_graph(inst)
        result = optimum(pruned)
        walks = []
        for v in graph.x_vertices:
            for walk in enumerate_walks(graph, v, I, 2):
                kinds = walk.kinds(graph)
                if kinds[-1] is K:
                    walks.append(walk)
        assert check_walk_lemma(graph, result, walks) == []


def test_check_walk_lemma_rejects_malformed(prelim_graph, prelim):
    from maxminlp import prune_non_contributing, split_constraints

    pruned, _ = prune_non_contributing(split_constraints(prelim).reduced)
    result = optimum(pruned)
    k2 = next(n for n, e in enumerate(prelim_graph.edges) if e.origin == "k2")
    with pytest.raises(ValueError):
        check_walk_lemma(prelim_graph, result, [Walk(("2", "3"), (k2,))])


def test_serialize_oracle_result(prelim):
    text = serialize_oracle_result(optimum(prelim))
    lines = text.splitlines()
    assert lines[-1].startswith("iterations ")
    assert any(line == "omega 2/3" for line in lines)
