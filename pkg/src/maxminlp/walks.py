"""Alternating-walk statistics on the coloured multigraph.

A walk alternates strictly between party edges (K) and resource edges (I);
vertices and edges may repeat, and a walk has at least one edge.  Its
K-length is the number of K-edges it uses.  For a free vertex v and edge
colours X, Y, the key quantities are

* the minimum K-length of a walk from v that starts with an X-edge and
  ends with a Y-edge at a forced-zero vertex (infinity if none exists), and
* the maximum K-length over all walks from v starting with an X-edge
  (infinity if walks wind through cycles indefinitely).

The decision layer only ever needs these truncated at a radius R:
``min(.., R)`` with an exact flag for "a zero-terminated K-ending walk of
K-length <= R exists", and ``min(max, R)``.  Everything here works on the
doubled state space (vertex, colour of the next or previous edge), which
turns walk questions into shortest/longest path questions with 0/1 edge
weights: K-edges cost one, I-edges cost nothing.

Two independent routes produce the same statistics: a direct computation
(`compute_stats`) and a synchronous message-passing simulation over exactly
2R rounds (`simulate_rounds`).  Their agreement is part of the test suite.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InputError
from .transform import ColouredGraph, EdgeKind, VertexKind

INFINITY = float("inf")

ExtNat = int | float  # a natural number or INFINITY


@dataclass(frozen=True)
class WalkStats:
    """Radius-truncated walk statistics for one free vertex.

    a_kk_le_r / a_ik_le_r: does a zero-terminated, K-ending walk starting
        with a K-edge / I-edge of K-length <= radius exist (exact flags).
    b_kk / b_ik: minimum such K-length, truncated at radius.
    B_k / B_i:  maximum K-length over walks starting with a K-edge /
        I-edge, truncated at radius.
    """

    a_kk_le_r: bool
    a_ik_le_r: bool
    b_ik: int
    b_kk: int
    B_i: int
    B_k: int
    radius: int

    def __post_init__(self):
        for name in ("b_ik", "b_kk", "B_i", "B_k"):
            value = getattr(self, name)
            if not 0 <= value <= self.radius:
                raise ValueError(f"{name}={value} outside [0, {self.radius}]")


def _require_x_vertex(graph: ColouredGraph, v: str) -> None:
    if v not in graph.vertices:
        raise InputError(f"unknown vertex {v}")
    if graph.vertices[v] is not VertexKind.X:
        raise InputError(f"vertex {v} is not a free vertex")


def min_k_length(graph: ColouredGraph, v: str, x: EdgeKind, y: EdgeKind) -> ExtNat:
    """Exact minimum K-length of a zero-terminated (v, X, Y)-walk.

    0/1 breadth-first search over states (vertex, colour of next edge),
    starting at (v, X).  Arriving at a vertex via a Y-edge lands in state
    (vertex, other(Y)); the answer is the cheapest such arrival at any
    forced-zero vertex.
    """
    _require_x_vertex(graph, v)
    neighbors = graph.neighbors
    start = (v, x)
    dist: dict[tuple[str, EdgeKind], int] = {start: 0}
    queue: deque[tuple[int, tuple[str, EdgeKind]]] = deque([(0, start)])
    while queue:
        d, state = queue.popleft()
        if d > dist.get(state, INFINITY):
            continue
        u, kind = state
        weight = 1 if kind is EdgeKind.K else 0
        nd = d + weight
        for w in neighbors[u][kind]:
            nxt = (w, kind.other)
            if nd < dist.get(nxt, INFINITY):
                dist[nxt] = nd
                if weight:
                    queue.append((nd, nxt))
                else:
                    queue.appendleft((nd, nxt))
    target_state = y.other
    best: ExtNat = INFINITY
    for z, kind in graph.vertices.items():
        if kind is VertexKind.ZERO:
            best = min(best, dist.get((z, target_state), INFINITY))
    return best


def max_k_length_bounded(graph: ColouredGraph, v: str, x: EdgeKind, radius: int) -> int:
    """Maximum K-length over (v, X)-walks, truncated at radius.

    Layered dynamic programming over states (vertex, colour of next edge)
    for at most 2*radius + 1 edge steps; a walk of K-length L never needs
    more than 2L + 1 edges, and hitting the radius short-circuits.
    """
    _require_x_vertex(graph, v)
    if radius < 1:
        raise InputError("radius must be >= 1")
    neighbors = graph.neighbors
    frontier: dict[tuple[str, EdgeKind], int] = {(v, x): 0}
    best = 0
    for _ in range(2 * radius + 1):
        nxt: dict[tuple[str, EdgeKind], int] = {}
        for (u, kind), count in frontier.items():
            gain = 1 if kind is EdgeKind.K else 0
            for w in neighbors[u][kind]:
                reached = count + gain
                if reached >= radius:
                    return radius
                key = (w, kind.other)
                if nxt.get(key, -1) < reached:
                    nxt[key] = reached
        if not nxt:
            break
        best = max(best, max(nxt.values()))
        frontier = nxt
    return best


def _zero_terminated_minima(graph: ColouredGraph) -> dict[tuple[str, EdgeKind], int]:
    """Multi-source 0/1 BFS from all forced-zero vertices, first edge K.

    Reversing a zero-terminated K-ending walk gives a walk from a zero
    vertex that starts with a K-edge; the K-length is unchanged.  The
    returned distances therefore satisfy, for every vertex u:
    dist[(u, other(X))] = exact minimum K-length of a zero-terminated
    K-ending walk from u whose first edge has colour X.
    """
    neighbors = graph.neighbors
    dist: dict[tuple[str, EdgeKind], int] = {}
    queue: deque[tuple[int, tuple[str, EdgeKind]]] = deque()
    for z, kind in graph.vertices.items():
        if kind is VertexKind.ZERO:
            dist[(z, EdgeKind.K)] = 0
            queue.append((0, (z, EdgeKind.K)))
    while queue:
        d, state = queue.popleft()
        if d > dist.get(state, INFINITY):
            continue
        u, kind = state
        weight = 1 if kind is EdgeKind.K else 0
        nd = d + weight
        for w in neighbors[u][kind]:
            nxt = (w, kind.other)
            if nd < dist.get(nxt, INFINITY):
                dist[nxt] = nd
                if weight:
                    queue.append((nd, nxt))
                else:
                    queue.appendleft((nd, nxt))
    return dist


def _max_k_by_arrival(graph: ColouredGraph, radius: int) -> dict[tuple[str, EdgeKind], int]:
    """Per (vertex, colour of last edge): truncated maximum walk K-length.

    Walks may start anywhere.  By reversal this equals, for each vertex v
    and colour X, the truncated maximum K-length over walks leaving v whose
    first edge has colour X.  2*radius edge layers suffice: a K-length of R
    is witnessed by a prefix cut right after its R-th K-edge (at most 2R
    edges), and any walk with K-length below R has at most 2R - 1 edges.
    """
    neighbors = graph.neighbors
    best: dict[tuple[str, EdgeKind], int] = {}
    frontier: dict[tuple[str, EdgeKind], int] = {}

    def record(state: tuple[str, EdgeKind], count: int, table: dict) -> None:
        if table.get(state, -1) < count:
            table[state] = count

    for e in graph.edges:
        gain = 1 if e.kind is EdgeKind.K else 0
        record((e.u, e.kind), gain, frontier)
        record((e.v, e.kind), gain, frontier)
    for state, count in frontier.items():
        record(state, count, best)
    for _ in range(2 * radius - 1):
        nxt: dict[tuple[str, EdgeKind], int] = {}
        for (u, kind), count in frontier.items():
            out_kind = kind.other
            gain = 1 if out_kind is EdgeKind.K else 0
            for w in neighbors[u][out_kind]:
                reached = min(count + gain, radius)
                record((w, out_kind), reached, nxt)
        if not nxt:
            break
        for state, count in nxt.items():
            record(state, count, best)
        frontier = nxt
    return best


def compute_stats(graph: ColouredGraph, radius: int) -> dict[str, WalkStats]:
    """Radius-truncated walk statistics for every free vertex."""
    if radius < 1:
        raise InputError("radius must be >= 1")
    minima = _zero_terminated_minima(graph)
    maxima = _max_k_by_arrival(graph, radius)
    stats: dict[str, WalkStats] = {}
    for v in graph.x_vertices:
        a_kk = minima.get((v, EdgeKind.I), INFINITY)  # arrival via K-edge
        a_ik = minima.get((v, EdgeKind.K), INFINITY)  # arrival via I-edge
        stats[v] = WalkStats(
            a_kk_le_r=a_kk <= radius,
            a_ik_le_r=a_ik <= radius,
            b_ik=int(min(a_ik, radius)),
            b_kk=int(min(a_kk, radius)),
            B_i=maxima.get((v, EdgeKind.I), 0),
            B_k=maxima.get((v, EdgeKind.K), 0),
            radius=radius,
        )
    return stats


# Message-passing state: per vertex and first-edge colour, the set of exact
# K-lengths (<= R) of zero-terminated K-ending walks seen so far, and the
# set of truncated K-lengths achieved by any walk seen so far.
_State = dict[EdgeKind, tuple[frozenset[int], frozenset[int]]]


def simulate_rounds(graph: ColouredGraph, radius: int) -> dict[str, WalkStats]:
    """Walk statistics via a synchronous protocol of exactly 2R rounds.

    Every round, each vertex sends its current state sets over each
    incident edge; the receiver extends them by the connecting edge.  All
    sends in a round read the previous round's state (double buffering), so
    the update order within a round cannot affect the result.  After 2R
    rounds the states cover exactly the walks of at most 2R edges, which is
    enough for every radius-truncated quantity.
    """
    if radius < 1:
        raise InputError("radius must be >= 1")
    empty: _State = {
        EdgeKind.K: (frozenset(), frozenset()),
        EdgeKind.I: (frozenset(), frozenset()),
    }
    state: dict[str, _State] = {v: dict(empty) for v in graph.vertices}

    for _ in range(2 * radius):
        incoming: dict[str, dict[EdgeKind, tuple[set[int], set[int]]]] = {
            v: {EdgeKind.K: (set(), set()), EdgeKind.I: (set(), set())}
            for v in graph.vertices
        }
        for e in graph.edges:
            gain = 1 if e.kind is EdgeKind.K else 0
            for sender, receiver in ((e.u, e.v), (e.v, e.u)):
                sent_term, sent_ach = state[sender][e.kind.other]
                term, ach = incoming[receiver][e.kind]
                # One-edge walk over e: always achieved; zero-terminated
                # and K-ending only if e is a K-edge into a zero vertex.
                ach.add(gain)
                if gain and graph.vertices[sender] is VertexKind.ZERO:
                    term.add(1)
                for length in sent_term:
                    if length + gain <= radius:
                        term.add(length + gain)
                for length in sent_ach:
                    ach.add(min(length + gain, radius))
        next_state: dict[str, _State] = {}
        for v in graph.vertices:
            per_kind: _State = {}
            for kind in (EdgeKind.K, EdgeKind.I):
                old_term, old_ach = state[v][kind]
                new_term, new_ach = incoming[v][kind]
                per_kind[kind] = (old_term | new_term, old_ach | new_ach)
            next_state[v] = per_kind
        state = next_state

    stats: dict[str, WalkStats] = {}
    for v in graph.x_vertices:
        term_k, ach_k = state[v][EdgeKind.K]
        term_i, ach_i = state[v][EdgeKind.I]
        stats[v] = WalkStats(
            a_kk_le_r=bool(term_k),
            a_ik_le_r=bool(term_i),
            b_ik=min(term_i) if term_i else radius,
            b_kk=min(term_k) if term_k else radius,
            B_i=max(ach_i, default=0),
            B_k=max(ach_k, default=0),
            radius=radius,
        )
    return stats


def dump_stats(stats: dict[str, WalkStats]) -> str:
    """Debug text dump, one line per free vertex."""
    lines = []
    for v, s in stats.items():
        lines.append(
            f"stats {v} aKK<=R:{int(s.a_kk_le_r)} aIK<=R:{int(s.a_ik_le_r)} "
            f"bIK:{s.b_ik} bKK:{s.b_kk} BI:{s.B_i} BK:{s.B_k}"
        )
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Walk:
    """A concrete walk: visited vertices plus indices into graph.edges."""

    vertices: tuple[str, ...]
    edge_indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.edge_indices) < 1:
            raise ValueError("a walk has at least one edge")
        if len(self.vertices) != len(self.edge_indices) + 1:
            raise ValueError("vertex count must be edge count + 1")

    def kinds(self, graph: ColouredGraph) -> tuple[EdgeKind, ...]:
        return tuple(graph.edges[idx].kind for idx in self.edge_indices)

    def k_length(self, graph: ColouredGraph) -> int:
        return sum(1 for k in self.kinds(graph) if k is EdgeKind.K)

    def validate_on(self, graph: ColouredGraph) -> None:
        """Raise ValueError unless this is a genuine alternating walk."""
        prev_kind: EdgeKind | None = None
        for step, idx in enumerate(self.edge_indices):
            if not 0 <= idx < len(graph.edges):
                raise ValueError(f"edge index {idx} out of range")
            e = graph.edges[idx]
            a, b = self.vertices[step], self.vertices[step + 1]
            if {a, b} != {e.u, e.v}:
                raise ValueError(f"edge {idx} does not join {a} and {b}")
            if prev_kind is not None and e.kind is prev_kind:
                raise ValueError(f"edges {step - 1} and {step} do not alternate")
            prev_kind = e.kind
