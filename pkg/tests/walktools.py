"""Brute-force alternating-walk enumeration used as a test oracle.

Walks are enumerated edge by edge with strict colour alternation, up to a
given edge budget.  Exponential, so only for small graphs.
"""

from __future__ import annotations

from maxminlp import ColouredGraph, EdgeKind, VertexKind, Walk


def _adjacency(graph: ColouredGraph) -> dict[str, list[tuple[int, EdgeKind, str]]]:
    table: dict[str, list[tuple[int, EdgeKind, str]]] = {v: [] for v in graph.vertices}
    for idx, e in enumerate(graph.edges):
        table[e.u].append((idx, e.kind, e.v))
        table[e.v].append((idx, e.kind, e.u))
    return table


def enumerate_walks(graph: ColouredGraph, start: str, first: EdgeKind, max_edges: int):
    """Yield every alternating walk from start whose first edge is `first`."""
    adjacency = _adjacency(graph)

    def extend(vertices: list[str], edges: list[int], want: EdgeKind):
        here = vertices[-1]
        for idx, kind, other in adjacency[here]:
            if kind is not want:
                continue
            vertices.append(other)
            edges.append(idx)
            yield Walk(tuple(vertices), tuple(edges))
            if len(edges) < max_edges:
                yield from extend(vertices, edges, want.other)
            vertices.pop()
            edges.pop()

    yield from extend([start], [], first)


def brute_stats(graph: ColouredGraph, start: str, first: EdgeKind, max_edges: int):
    """(min K-length ending with each colour at a zero vertex, max K-length).

    Returns ({EdgeKind: min or None}, max_k) over walks of <= max_edges
    edges from `start` whose first edge has colour `first`.
    """
    best_terminated: dict[EdgeKind, int | None] = {EdgeKind.K: None, EdgeKind.I: None}
    best_any = 0
    for walk in enumerate_walks(graph, start, first, max_edges):
        k_len = walk.k_length(graph)
        best_any = max(best_any, k_len)
        if graph.vertices[walk.vertices[-1]] is VertexKind.ZERO:
            last = walk.kinds(graph)[-1]
            current = best_terminated[last]
            if current is None or k_len < current:
                best_terminated[last] = k_len
    return best_terminated, best_any
