"""The local approximation algorithm and its end-to-end pipeline.

Each free vertex v turns its radius-R walk statistics into two integers:

    p = b_ik           if a zero-terminated K-to-K walk fits in the radius,
    p = min(b_ik, B_k)  otherwise;
    q = b_kk           if a zero-terminated I-to-K walk fits in the radius,
    q = min(b_kk, B_i)  otherwise,

and outputs the activity x = p / (p + q).  p is always at least one, so
x is well defined and lies in (0, 1].  For radius R >= 2 the resulting
utility is within a factor delta/2 + delta/(2(R-1)) of the optimum, where
delta = max(2, largest resource support of the original instance); its
exact value comes from `guarantee`.  R = 1 still produces a feasible
solution but carries no ratio.

`solve` chains the whole pipeline: split oversized resources, prune
non-contributing agents, encode as a coloured graph, compute walk
statistics, pick p/q per vertex, map values back to agents, and rescale.
The returned assignment is re-checked for exact feasibility.

Information only ever travels 2R graph hops, so the output at an agent is
a function of its hypergraph neighbourhood; `locality_check` verifies that
functionally on instance pairs that agree around a probe agent.  One
caveat: the rescaling factor depends on the largest resource support,
which is a global quantity, so paired instances must also agree on it
(`make_locality_pair` only applies edits that preserve it).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InvariantError, PreconditionError
from .model import (
    Assignment,
    HypergraphView,
    Instance,
    ball,
    check_feasible,
    require_valid,
    utility,
)
from .reduction import ReductionMap, scale_back, split_constraints
from .transform import ColouredGraph, VertexKind, build_graph, prune_non_contributing
from .walks import WalkStats, compute_stats


@dataclass(frozen=True)
class PQChoice:
    """Per-vertex decision: integers p >= 1, q >= 0 and x = p / (p + q)."""

    p: int
    q: int
    x: Fraction


@dataclass(frozen=True)
class SolveReport:
    """Summary of one pipeline run."""

    radius: int
    omega: Fraction
    guarantee_factor: Fraction | None  # None when radius == 1
    feasible: bool
    delta: int
    timings: dict[str, float]


@dataclass(frozen=True)
class LocalityVerdict:
    equal: bool
    radius: int  # hypergraph radius within which the inputs were compared
    probe: str
    value_a: Fraction
    value_b: Fraction


def choose_pq(stats: WalkStats) -> PQChoice:
    """Apply the selection rule to one vertex's walk statistics."""
    p = stats.b_ik if stats.a_kk_le_r else min(stats.b_ik, stats.B_k)
    q = stats.b_kk if stats.a_ik_le_r else min(stats.b_kk, stats.B_i)
    if p < 1:
        raise InvariantError(f"selection produced p={p}; walk statistics are broken")
    return PQChoice(p, q, Fraction(p, p + q))


def assign_values(graph: ColouredGraph, radius: int) -> dict[str, Fraction]:
    """Activity value for every vertex: p/(p+q) for free, zero for forced."""
    stats = compute_stats(graph, radius)
    values: dict[str, Fraction] = {}
    for vertex, kind in graph.vertices.items():
        if kind is VertexKind.ZERO:
            values[vertex] = Fraction(0)
        else:
            values[vertex] = choose_pq(stats[vertex]).x
    return values


def guarantee(delta: int, radius: int) -> Fraction:
    """The proven approximation factor delta/2 + delta/(2(R-1))."""
    if delta < 2:
        raise InputError("delta must be >= 2")
    if radius < 2:
        raise InputError("no ratio is available for radius < 2")
    return Fraction(delta, 2) + Fraction(delta, 2 * (radius - 1))


def solve(instance: Instance, radius: int) -> tuple[Assignment, SolveReport]:
    """Run the full pipeline and return the assignment plus a report.

    Requires a valid instance with party supports of size at most two and
    radius >= 1.  The output is always feasible; a feasibility failure
    would mean a bug and raises instead of being returned.
    """
    if radius < 1:
        raise InputError("radius must be >= 1")
    timings: dict[str, float] = {}

    def timed(stage: str, fn, *args):
        start = time.perf_counter()
        result = fn(*args)
        timings[stage] = time.perf_counter() - start
        return result

    require_valid(instance)
    reduction: ReductionMap = timed("split", split_constraints, instance)
    pruned, dropped = timed("prune", prune_non_contributing, reduction.reduced)
    graph = timed("encode", build_graph, pruned, dropped)
    values = timed("assign", assign_values, graph, radius)
    x_reduced = timed("extract", _extract, graph, values)
    assignment = timed("rescale", scale_back, reduction, x_reduced)

    start = time.perf_counter()
    violations = check_feasible(instance, assignment)
    omega = utility(instance, assignment)
    timings["check"] = time.perf_counter() - start
    if violations:
        raise InvariantError(
            "pipeline output violates resources: " + ", ".join(violations)
        )
    factor = guarantee(reduction.delta, radius) if radius >= 2 else None
    report = SolveReport(
        radius=radius,
        omega=omega,
        guarantee_factor=factor,
        feasible=True,
        delta=reduction.delta,
        timings=timings,
    )
    return assignment, report


def _extract(graph: ColouredGraph, values: dict[str, Fraction]) -> Assignment:
    from .transform import extract_solution

    return extract_solution(graph, values)


def _local_input(view: HypergraphView, agents: set[str]):
    return {
        a: frozenset((e.kind, e.label, e.members) for e in view.incident[a])
        for a in agents
    }


def locality_check(
    instance_a: Instance,
    instance_b: Instance,
    probe: str,
    radius: int,
) -> LocalityVerdict:
    """Verify that agreeing neighbourhoods imply an identical probe value.

    The instances must present identical local input (incident hyperedges,
    by id) for every agent within 2R + 2 hyperedge hops of the probe; the
    extra two hops cover the bookkeeping of splitting, pruning and padding.
    Raises PreconditionError when that agreement cannot be verified.
    """
    r_test = 2 * radius + 2
    view_a = HypergraphView(instance_a)
    view_b = HypergraphView(instance_b)
    if probe not in view_a.incident or probe not in view_b.incident:
        raise PreconditionError(f"probe agent {probe} missing from an instance")
    ball_a = ball(view_a, probe, r_test)
    ball_b = ball(view_b, probe, r_test)
    if ball_a != ball_b:
        raise PreconditionError(
            f"balls of radius {r_test} around {probe} differ between instances"
        )
    if _local_input(view_a, ball_a) != _local_input(view_b, ball_b):
        raise PreconditionError(
            f"local input within radius {r_test} of {probe} differs between instances"
        )
    xa, _ = solve(instance_a, radius)
    xb, _ = solve(instance_b, radius)
    va, vb = xa.value(probe), xb.value(probe)
    return LocalityVerdict(va == vb, r_test, probe, va, vb)


def make_locality_pair(
    radius: int, seed: int, edit_inside: bool = False
) -> tuple[Instance, Instance, str]:
    """A chain instance and a far-edited twin for locality trials.

    The chain has 3 * (2R + 3) agents, consecutive agents sharing one
    resource and one party, with seeded decoration (extra singleton parties
    and parallel pair resources).  The twin differs only in a random edit
    applied at the far end, beyond 2R + 2 hops from the probe (the first
    agent), and every edit keeps the largest resource support at two so the
    rescaling factor is unchanged.  With edit_inside the edit lands next to
    the probe instead, which locality_check must refuse.
    """
    rng = random.Random(seed)
    n = 3 * (2 * radius + 3)
    agents = [f"v{j}" for j in range(1, n + 1)]
    parties: dict[str, list[str]] = {}
    resources: dict[str, list[str]] = {}
    for j in range(n - 1):
        resources[f"r{j}"] = [agents[j], agents[j + 1]]
        parties[f"k{j}"] = [agents[j], agents[j + 1]]
    for j in range(n):
        if rng.random() < 0.3:
            parties[f"kp{j}"] = [agents[j]]
        if rng.random() < 0.2 and j + 1 < n:
            resources[f"rp{j}"] = [agents[j], agents[j + 1]]
    base = Instance(agents, parties, resources)

    edited_parties = {k: list(m) for k, m in parties.items()}
    edited_resources = {i: list(m) for i, m in resources.items()}
    spot = rng.randrange(2) if edit_inside else n - 1 - rng.randrange(2)
    choice = rng.randrange(3)
    if choice == 0:
        edited_parties[f"edit_k{spot}"] = [agents[spot]]
    elif choice == 1 and spot > 0:
        edited_resources[f"edit_r{spot}"] = [agents[spot - 1], agents[spot]]
    else:
        label = f"kp{spot}"
        if label in edited_parties:
            del edited_parties[label]
        else:
            edited_parties[label] = [agents[spot]]
    twin = Instance(agents, edited_parties, edited_resources)
    return base, twin, agents[0]
