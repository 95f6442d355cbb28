"""Exact rational LP oracle and walk-based certificates.

`optimum` solves max omega subject to every party benefit >= omega, every
resource sum <= 1, and nonnegative activities, using a dense-tableau primal
simplex over `fractions.Fraction` with Bland's rule (smallest index enters,
smallest basic index breaks ratio ties), which cannot cycle.  Starting from
the slack basis is feasible because omega is modelled as a nonnegative
variable.  The solver is meant for desk-scale instances and refuses
anything above its agent cap.

`walk_upper_bound` turns walk structure of a transformed graph into an
upper bound on the optimum: a zero-terminated K-to-K walk of K-length n
forces omega* <= 1 - 1/n, an I-first K-ending walk from a free vertex of
K-length n forces omega* <= 1 + 1/n, and any K-edge touching a forced-zero
vertex forces omega* <= 1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InvariantError, SizeCapError
from .model import Assignment, Instance, check_feasible, require_valid, utility
from .transform import ColouredGraph, EdgeKind, VertexKind
from .walks import INFINITY, Walk

DEFAULT_AGENT_CAP = 60


@dataclass(frozen=True)
class OracleResult:
    omega_star: Fraction
    witness: Assignment
    iterations: int


def _pivot(tableau: list[list[Fraction]], obj: list[Fraction], row: int, col: int) -> None:
    pivot_value = tableau[row][col]
    tableau[row] = [v / pivot_value for v in tableau[row]]
    pivot_row = tableau[row]
    for r, current in enumerate(tableau):
        if r != row and current[col] != 0:
            factor = current[col]
            tableau[r] = [v - factor * p for v, p in zip(current, pivot_row)]
    if obj[col] != 0:
        factor = obj[col]
        obj[:] = [v - factor * p for v, p in zip(obj, pivot_row)]


def optimum(instance: Instance, max_agents: int = DEFAULT_AGENT_CAP) -> OracleResult:
    """Exact optimum and witness of the max-min packing LP."""
    require_valid(instance)
    n = len(instance.agents)
    if n > max_agents:
        raise SizeCapError(f"instance has {n} agents, oracle cap is {max_agents}")
    index = instance.agent_index
    omega_col = n
    nv = n + 1
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for members in instance.parties.values():
        row = [Fraction(0)] * nv
        row[omega_col] = Fraction(1)
        for a in members:
            row[index[a]] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(0))
    for members in instance.resources.values():
        row = [Fraction(0)] * nv
        for a in members:
            row[index[a]] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    m = len(rows)
    total = nv + m
    tableau = []
    for i, row in enumerate(rows):
        slack = [Fraction(0)] * m
        slack[i] = Fraction(1)
        tableau.append(row + slack + [rhs[i]])
    obj = [Fraction(0)] * (total + 1)
    obj[omega_col] = Fraction(1)
    basis = [nv + i for i in range(m)]

    iterations = 0
    while True:
        entering = next((j for j in range(total) if obj[j] > 0), None)
        if entering is None:
            break
        leaving = None
        best_ratio: Fraction | None = None
        for i in range(m):
            coeff = tableau[i][entering]
            if coeff > 0:
                ratio = tableau[i][-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving is None:
            raise InvariantError("LP unbounded; the model should always be bounded")
        _pivot(tableau, obj, leaving, entering)
        basis[leaving] = entering
        iterations += 1

    solution = [Fraction(0)] * nv
    for i, var in enumerate(basis):
        if var < nv:
            solution[var] = tableau[i][-1]
    witness = Assignment({a: solution[index[a]] for a in instance.agents})
    omega_star = solution[omega_col]

    if check_feasible(instance, witness):
        raise InvariantError("oracle produced an infeasible witness")
    if utility(instance, witness) != omega_star:
        raise InvariantError("oracle witness utility does not match its optimum")
    return OracleResult(omega_star, witness, iterations)


def _shortest_zero_kk_walk(graph: ColouredGraph) -> int | float:
    """Minimum K-length of a zero-to-zero walk starting and ending with K."""
    neighbors = graph.neighbors
    dist: dict[tuple[str, EdgeKind], int] = {}
    queue: deque[tuple[int, tuple[str, EdgeKind]]] = deque()
    zeros = [v for v, kind in graph.vertices.items() if kind is VertexKind.ZERO]
    for z in zeros:
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
    # Arrival at a zero vertex via a K-edge is state (zero, I).
    return min((dist.get((z, EdgeKind.I), INFINITY) for z in zeros), default=INFINITY)


def _longest_i_first_k_ending(graph: ColouredGraph, budget: int) -> int:
    """Best K-length <= budget of an I-first, K-ending walk from a free vertex.

    Layered maximisation over (vertex, colour of next edge) states; the
    bound derived from any witnessed K-length is valid even if longer walks
    exist beyond the budget.
    """
    neighbors = graph.neighbors
    frontier = {
        (v, EdgeKind.I): 0
        for v, kind in graph.vertices.items()
        if kind is VertexKind.X
    }
    best = 0
    for _ in range(2 * budget + 1):
        nxt: dict[tuple[str, EdgeKind], int] = {}
        for (u, kind), count in frontier.items():
            gain = 1 if kind is EdgeKind.K else 0
            for w in neighbors[u][kind]:
                reached = count + gain
                if gain and reached > best:
                    best = reached  # arrival via a K-edge ends a K-ending walk
                    if best >= budget:
                        return budget
                key = (w, kind.other)
                if nxt.get(key, -1) < reached:
                    nxt[key] = reached
        if not nxt:
            break
        frontier = nxt
    return best


def walk_upper_bound(graph: ColouredGraph) -> Fraction | None:
    """Tightest walk-certificate upper bound on the optimum, or None.

    Combines three certificate families: 1 - 1/n from the shortest
    zero-to-zero K-to-K walk, 1 + 1/n from the longest witnessed I-first
    K-ending walk out of a free vertex (searched up to K-length
    |vertices|), and 1 whenever some K-edge touches a forced-zero vertex.
    """
    candidates: list[Fraction] = []
    short = _shortest_zero_kk_walk(graph)
    if short != INFINITY:
        candidates.append(1 - Fraction(1, int(short)))
    budget = max(1, len(graph.vertices))
    longest = _longest_i_first_k_ending(graph, budget)
    if longest >= 1:
        candidates.append(1 + Fraction(1, longest))
    if any(
        e.kind is EdgeKind.K
        and (
            graph.vertices[e.u] is VertexKind.ZERO
            or graph.vertices[e.v] is VertexKind.ZERO
        )
        for e in graph.edges
    ):
        candidates.append(Fraction(1))
    if not candidates:
        return None
    return min(candidates)


def check_walk_lemma(
    graph: ColouredGraph,
    result: OracleResult,
    sample_walks: Sequence[Walk],
) -> list[str]:
    """Check x*_v - x*_u <= (1 - omega*) * n on I-first K-ending walks.

    Each sampled walk must start with a resource edge and end with a party
    edge; n is its K-length.  Vertex values come from the oracle witness
    (forced-zero vertices count as zero).  Returns violation descriptions,
    empty when the inequality holds on every sample.
    """
    values: dict[str, Fraction] = {}
    for vertex, kind in graph.vertices.items():
        if kind is VertexKind.ZERO:
            values[vertex] = Fraction(0)
        else:
            values[vertex] = result.witness.value(graph.origin[vertex])
    violations: list[str] = []
    for walk in sample_walks:
        walk.validate_on(graph)
        kinds = walk.kinds(graph)
        if kinds[0] is not EdgeKind.I or kinds[-1] is not EdgeKind.K:
            raise ValueError("sample walk must start with an I-edge and end with a K-edge")
        n = walk.k_length(graph)
        start, end = walk.vertices[0], walk.vertices[-1]
        lhs = values[start] - values[end]
        rhs = (1 - result.omega_star) * n
        if lhs > rhs:
            violations.append(
                f"walk {start}->{end} of K-length {n}: {lhs} > {rhs}"
            )
    return violations


def serialize_oracle_result(result: OracleResult) -> str:
    """Assignment file format plus an iterations line."""
    from .fileformat import serialize_assignment

    return (
        serialize_assignment(result.witness, result.omega_star)
        + f"iterations {result.iterations}\n"
    )
