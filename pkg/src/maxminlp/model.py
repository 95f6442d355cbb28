"""Data model for 0/1 max-min packing problems.

An instance consists of *agents*, each controlling a nonnegative activity
level x_v, *parties* whose benefit is the sum of their members' activities,
and *resources* that each cap the combined activity of their members at one
unit.  The goal is to maximise the smallest party benefit.  All coefficients
are 0/1, so parties and resources are stored purely as support sets over the
agents; no coefficient matrix is materialised.

Agents communicate along a hypergraph whose hyperedges are exactly the
party and resource support sets; distances count hyperedge hops.  All
activity arithmetic is exact (`fractions.Fraction`), so feasibility
decisions on the boundary are never blurred by rounding.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .errors import ValidationError

RationalLike = Fraction | int


def _canonical_supports(
    supports: Mapping[str, Iterable[str]], index: dict[str, int]
) -> dict[str, tuple[str, ...]]:
    # Support sets are sets; members are stored deduplicated and ordered by
    # agent declaration order so that every downstream iteration (edge
    # construction, serialisation) is deterministic across runs.
    out: dict[str, tuple[str, ...]] = {}
    for label, members in supports.items():
        unique = set(members)
        out[label] = tuple(sorted(unique, key=lambda a: (index.get(a, len(index)), a)))
    return out


@dataclass(frozen=True)
class Instance:
    """A 0/1 max-min packing instance.

    agents:    declared agent ids, order-preserving.
    parties:   party id -> member agents (benefit = sum of member activity).
    resources: resource id -> member agents (member activity sums to <= 1).
    """

    agents: tuple[str, ...]
    parties: dict[str, tuple[str, ...]]
    resources: dict[str, tuple[str, ...]]

    def __init__(
        self,
        agents: Iterable[str],
        parties: Mapping[str, Iterable[str]],
        resources: Mapping[str, Iterable[str]],
    ):
        agent_tuple = tuple(agents)
        index = {a: i for i, a in enumerate(agent_tuple)}
        object.__setattr__(self, "agents", agent_tuple)
        object.__setattr__(self, "parties", _canonical_supports(parties, index))
        object.__setattr__(self, "resources", _canonical_supports(resources, index))

    @cached_property
    def agent_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.agents)}

    @cached_property
    def parties_of(self) -> dict[str, tuple[str, ...]]:
        """Agent id -> ids of the parties it benefits (K_v)."""
        out: dict[str, list[str]] = {a: [] for a in self.agents}
        for label, members in self.parties.items():
            for a in members:
                if a in out:
                    out[a].append(label)
        return {a: tuple(ls) for a, ls in out.items()}

    @cached_property
    def resources_of(self) -> dict[str, tuple[str, ...]]:
        """Agent id -> ids of the resources it consumes (I_v)."""
        out: dict[str, list[str]] = {a: [] for a in self.agents}
        for label, members in self.resources.items():
            for a in members:
                if a in out:
                    out[a].append(label)
        return {a: tuple(ls) for a, ls in out.items()}


@dataclass(frozen=True)
class DegreeBounds:
    """Exact maxima of the four support-set sizes of an instance.

    delta_iv: most resources any one agent consumes.
    delta_kv: most parties any one agent benefits.
    delta_vi: largest resource support.
    delta_vk: largest party support.
    """

    delta_iv: int
    delta_kv: int
    delta_vi: int
    delta_vk: int


@dataclass(frozen=True)
class Assignment:
    """Exact nonnegative activity per agent."""

    values: dict[str, Fraction]

    def __init__(self, values: Mapping[str, RationalLike]):
        converted: dict[str, Fraction] = {}
        for agent, raw in values.items():
            v = Fraction(raw)
            if v < 0:
                raise ValueError(f"negative activity {v} for agent {agent}")
            converted[agent] = v
        object.__setattr__(self, "values", converted)

    def value(self, agent: str) -> Fraction:
        try:
            return self.values[agent]
        except KeyError:
            raise KeyError(f"assignment has no value for agent {agent}") from None


@dataclass(frozen=True)
class Hyperedge:
    """One communication hyperedge: a party or resource support set."""

    kind: str  # "party" | "resource"
    label: str
    members: tuple[str, ...]


class HypergraphView:
    """The communication hypergraph of an instance.

    Vertices are agents; hyperedges are all party and resource supports,
    tagged with their origin.  Distance counts hyperedge hops.
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        self.vertices = instance.agents
        edges = [Hyperedge("party", k, m) for k, m in instance.parties.items()]
        edges += [Hyperedge("resource", i, m) for i, m in instance.resources.items()]
        self.hyperedges: tuple[Hyperedge, ...] = tuple(edges)
        incident: dict[str, list[Hyperedge]] = {a: [] for a in instance.agents}
        for e in self.hyperedges:
            for a in e.members:
                if a in incident:
                    incident[a].append(e)
        self.incident: dict[str, tuple[Hyperedge, ...]] = {
            a: tuple(es) for a, es in incident.items()
        }


def validate(instance: Instance) -> list[str]:
    """Report every broken instance invariant; an empty list means valid.

    Agents with no party are accepted here (they are handled later by
    pruning); an agent in no resource is an error.
    """
    violations: list[str] = []
    declared = set(instance.agents)
    if len(declared) != len(instance.agents):
        seen: set[str] = set()
        for a in instance.agents:
            if a in seen:
                violations.append(f"agent {a} declared more than once")
            seen.add(a)
    for label, members in instance.parties.items():
        if not members:
            violations.append(f"party {label} has empty support")
        for a in members:
            if a not in declared:
                violations.append(f"party {label} references undeclared agent {a}")
    for label, members in instance.resources.items():
        if not members:
            violations.append(f"resource {label} has empty support")
        for a in members:
            if a not in declared:
                violations.append(f"resource {label} references undeclared agent {a}")
    if not instance.parties:
        violations.append("instance declares no parties")
    for a in instance.agents:
        if not instance.resources_of.get(a):
            violations.append(f"agent {a} belongs to no resource")
    return violations


def require_valid(instance: Instance) -> None:
    violations = validate(instance)
    if violations:
        raise ValidationError(violations)


def degree_bounds(instance: Instance) -> DegreeBounds:
    """Exact maxima of |I_v|, |K_v|, |V_i|, |V_k| over a valid instance."""
    require_valid(instance)
    delta_iv = max(len(rs) for rs in instance.resources_of.values())
    delta_kv = max(len(ks) for ks in instance.parties_of.values())
    delta_vi = max(len(m) for m in instance.resources.values())
    delta_vk = max(len(m) for m in instance.parties.values())
    return DegreeBounds(delta_iv, delta_kv, delta_vi, delta_vk)


def utility(instance: Instance, x: Assignment) -> Fraction:
    """The smallest party benefit under x, exactly."""
    if not instance.parties:
        raise ValidationError(["instance declares no parties"])
    return min(
        sum((x.value(a) for a in members), Fraction(0))
        for members in instance.parties.values()
    )


def check_feasible(instance: Instance, x: Assignment) -> list[str]:
    """Ids of resources whose member activities sum above one unit.

    Comparison is exact, so a sum of exactly one is feasible.  Activity
    nonnegativity is enforced by Assignment itself.
    """
    violated: list[str] = []
    for label, members in instance.resources.items():
        total = sum((x.value(a) for a in members), Fraction(0))
        if total > 1:
            violated.append(label)
    return violated


def ball(view: HypergraphView, v: str, r: int) -> set[str]:
    """Agents within r hyperedge hops of v in the communication hypergraph."""
    if v not in view.incident:
        raise KeyError(f"unknown agent {v}")
    if r < 0:
        raise ValueError("radius must be nonnegative")
    reached = {v}
    frontier = deque([(v, 0)])
    while frontier:
        u, d = frontier.popleft()
        if d == r:
            continue
        for edge in view.incident[u]:
            for w in edge.members:
                if w not in reached:
                    reached.add(w)
                    frontier.append((w, d + 1))
    return reached
