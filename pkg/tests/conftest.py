from __future__ import annotations

import pytest

from maxminlp import (
    Instance,
    build_graph,
    builtin_instance,
    prune_non_contributing,
    split_constraints,
)


def transformed_graph(instance: Instance):
    """Split, prune, and encode; returns (graph, pruned instance, reduction)."""
    reduction = split_constraints(instance)
    pruned, dropped = prune_non_contributing(reduction.reduced)
    return build_graph(pruned, dropped), pruned, reduction


@pytest.fixture
def prelim() -> Instance:
    return builtin_instance("prelim")


@pytest.fixture
def isp() -> Instance:
    return builtin_instance("isp")


@pytest.fixture
def prelim_graph(prelim):
    graph, _, _ = transformed_graph(prelim)
    return graph


@pytest.fixture
def singleton() -> Instance:
    return Instance(("v",), {"k1": ("v",)}, {"i1": ("v",)})


@pytest.fixture
def singleton_graph(singleton):
    graph, _, _ = transformed_graph(singleton)
    return graph
