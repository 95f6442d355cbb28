"""Encoding an instance as a two-coloured multigraph.

After constraint splitting, every support has size one or two.  Agents that
benefit no party can be fixed at activity zero and dropped (resources whose
support empties out disappear with them).  Each remaining size-one support
is padded with a fresh forced-zero vertex.  The result is a multigraph
whose vertices are coloured ``x`` (free) or ``0`` (forced zero) and whose
edges are coloured ``K`` (from parties) or ``I`` (from resources); each
edge keeps the id of the party or resource it came from.  Parallel edges
are preserved, never merged.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Mapping

from .errors import InvariantError, UnsupportedInstanceError
from .model import Assignment, Instance, degree_bounds, require_valid


class VertexKind(Enum):
    X = "x"
    ZERO = "0"


class EdgeKind(Enum):
    K = "K"  # party edge
    I = "I"  # resource edge

    @property
    def other(self) -> "EdgeKind":
        return EdgeKind.I if self is EdgeKind.K else EdgeKind.K


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    kind: EdgeKind
    origin: str


@dataclass(frozen=True)
class ColouredGraph:
    """Two-coloured multigraph plus the bookkeeping to map values back."""

    vertices: dict[str, VertexKind]
    edges: tuple[Edge, ...]
    origin: dict[str, str]  # x-vertex id -> original agent id
    pruned: frozenset[str]  # agents dropped before encoding

    @cached_property
    def x_vertices(self) -> tuple[str, ...]:
        return tuple(v for v, kind in self.vertices.items() if kind is VertexKind.X)

    @cached_property
    def zero_vertices(self) -> tuple[str, ...]:
        return tuple(v for v, kind in self.vertices.items() if kind is VertexKind.ZERO)

    @cached_property
    def neighbors(self) -> dict[str, dict[EdgeKind, tuple[str, ...]]]:
        """Per vertex, per edge colour, the adjacent vertices (with multiplicity)."""
        table: dict[str, dict[EdgeKind, list[str]]] = {
            v: {EdgeKind.K: [], EdgeKind.I: []} for v in self.vertices
        }
        for e in self.edges:
            table[e.u][e.kind].append(e.v)
            table[e.v][e.kind].append(e.u)
        return {
            v: {kind: tuple(ns) for kind, ns in kinds.items()}
            for v, kinds in table.items()
        }

    def is_x(self, vertex: str) -> bool:
        return self.vertices[vertex] is VertexKind.X


def check_graph(graph: ColouredGraph) -> list[str]:
    """Structural invariants of transformed graphs; empty list means sound."""
    violations: list[str] = []
    degree = {v: 0 for v in graph.vertices}
    for e in graph.edges:
        for end in (e.u, e.v):
            if end not in graph.vertices:
                violations.append(f"edge {e.origin} touches unknown vertex {end}")
            else:
                degree[end] += 1
    for v, kind in graph.vertices.items():
        if kind is VertexKind.ZERO:
            if degree[v] != 1:
                violations.append(f"0-vertex {v} has degree {degree[v]}, expected 1")
        else:
            kinds = graph.neighbors[v]
            if not kinds[EdgeKind.K]:
                violations.append(f"x-vertex {v} has no party edge")
            if not kinds[EdgeKind.I]:
                violations.append(f"x-vertex {v} has no resource edge")
    return violations


def prune_non_contributing(instance: Instance) -> tuple[Instance, frozenset[str]]:
    """Drop agents that benefit no party; fix their activity at zero.

    Removals can only shrink resource supports (party membership itself
    implies a nonempty party list), so a single pass reaches the fixed
    point.  Resources whose support empties are dropped.
    """
    require_valid(instance)
    bounds = degree_bounds(instance)
    if bounds.delta_vi > 2 or bounds.delta_vk > 2:
        raise UnsupportedInstanceError(
            "pruning expects supports of size <= 2; split constraints first"
        )
    pruned = frozenset(a for a in instance.agents if not instance.parties_of[a])
    if not pruned:
        return instance, pruned
    survivors = tuple(a for a in instance.agents if a not in pruned)
    resources = {}
    for label, members in instance.resources.items():
        kept = tuple(a for a in members if a not in pruned)
        if kept:
            resources[label] = kept
    return Instance(survivors, instance.parties, resources), pruned


def _fresh_zero_id(base: str, taken: set[str]) -> str:
    name = f"zero_{base}"
    while name in taken:  # collides only if an agent uses a zero_* id
        name += "_"
    return name


def build_graph(instance: Instance, pruned: frozenset[str] = frozenset()) -> ColouredGraph:
    """Encode a pruned instance (all supports of size 1 or 2) as a graph.

    Size-one supports receive a fresh forced-zero vertex named after the
    party or resource they pad.  Every party becomes a K-edge and every
    resource an I-edge.
    """
    require_valid(instance)
    for a in instance.agents:
        if not instance.parties_of[a]:
            raise UnsupportedInstanceError(
                f"agent {a} benefits no party; prune non-contributing agents first"
            )
    vertices: dict[str, VertexKind] = {a: VertexKind.X for a in instance.agents}
    edges: list[Edge] = []

    def add_edges(supports: Mapping[str, tuple[str, ...]], kind: EdgeKind) -> None:
        for label, members in supports.items():
            if len(members) == 2:
                edges.append(Edge(members[0], members[1], kind, label))
            elif len(members) == 1:
                pad = _fresh_zero_id(label, set(vertices))
                vertices[pad] = VertexKind.ZERO
                edges.append(Edge(members[0], pad, kind, label))
            else:
                raise UnsupportedInstanceError(
                    f"support {label} has size {len(members)}; split constraints first"
                )

    add_edges(instance.parties, EdgeKind.K)
    add_edges(instance.resources, EdgeKind.I)
    graph = ColouredGraph(
        vertices=vertices,
        edges=tuple(edges),
        origin={a: a for a in instance.agents},
        pruned=pruned,
    )
    violations = check_graph(graph)
    if violations:
        raise InvariantError("graph construction broke invariants: " + "; ".join(violations))
    return graph


def extract_solution(graph: ColouredGraph, vertex_values: Mapping[str, Fraction]) -> Assignment:
    """Read a per-vertex labelling back as an assignment over the agents.

    Forced-zero vertices must carry value zero; pruned agents get zero.
    """
    values: dict[str, Fraction] = {a: Fraction(0) for a in graph.pruned}
    for vertex, kind in graph.vertices.items():
        try:
            value = Fraction(vertex_values[vertex])
        except KeyError:
            raise KeyError(f"no value for vertex {vertex}") from None
        if kind is VertexKind.ZERO:
            if value != 0:
                raise InvariantError(f"forced-zero vertex {vertex} carries value {value}")
        else:
            values[graph.origin[vertex]] = value
    return Assignment(values)


def dump_graph(graph: ColouredGraph) -> str:
    """Debug text dump: vertex and edge lines."""
    lines = [f"vertex {v} {kind.value}" for v, kind in graph.vertices.items()]
    lines += [f"edge {e.kind.value} {e.u} {e.v} {e.origin}" for e in graph.edges]
    return "\n".join(lines) + "\n"
