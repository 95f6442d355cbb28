"""Constraint splitting and solution scaling.

Every resource with more than two members is replaced by one pairwise
resource per unordered member pair, leaving an instance whose resource
supports all have size at most two.  Parties are untouched, so utilities
agree between the two instances.  A feasible solution x' of the split
instance maps back to the original by the uniform scaling
x_v = (2 / delta) * x'_v with delta = max(2, largest original resource
support): summing the pairwise constraints over one original resource of
size n gives (n-1) * sum <= C(n, 2), hence sum <= n / delta <= 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InfeasibleAssignmentError, UnsupportedInstanceError
from .model import Assignment, Instance, check_feasible, degree_bounds, require_valid


@dataclass(frozen=True)
class ReductionMap:
    """Links an instance to its pairwise-split form.

    scale is 2/delta; replaced maps each split resource id to the ids of
    the pairwise resources that stand in for it.
    """

    original: Instance
    reduced: Instance
    scale: Fraction
    replaced: dict[str, tuple[str, ...]]

    @property
    def delta(self) -> int:
        return int(2 / self.scale)


def split_constraints(instance: Instance) -> ReductionMap:
    """Split every resource of size > 2 into all pairwise resources.

    New resource ids are ``<orig>__<u>__<v>`` with u before v in agent
    declaration order, so the split is deterministic and computable from
    the resource's own member list.
    """
    require_valid(instance)
    bounds = degree_bounds(instance)
    if bounds.delta_vk > 2:
        raise UnsupportedInstanceError(
            f"party supports of size {bounds.delta_vk} are not supported (max 2)"
        )
    delta = max(2, bounds.delta_vi)
    reduced_resources: dict[str, tuple[str, ...]] = {}
    replaced: dict[str, tuple[str, ...]] = {}
    for label, members in instance.resources.items():
        if len(members) <= 2:
            reduced_resources[label] = members
            continue
        new_ids = []
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                u, v = members[a], members[b]
                new_id = f"{label}__{u}__{v}"
                reduced_resources[new_id] = (u, v)
                new_ids.append(new_id)
        replaced[label] = tuple(new_ids)
    reduced = Instance(instance.agents, instance.parties, reduced_resources)
    return ReductionMap(instance, reduced, Fraction(2, delta), replaced)


def scale_back(reduction: ReductionMap, x_reduced: Assignment) -> Assignment:
    """Map a feasible solution of the split instance back to the original.

    The input must be feasible for the split instance; the scaled output is
    then feasible for the original by construction.
    """
    violations = check_feasible(reduction.reduced, x_reduced)
    if violations:
        raise InfeasibleAssignmentError(
            "assignment violates split resources: " + ", ".join(violations)
        )
    scale = reduction.scale
    return Assignment({a: scale * x_reduced.value(a) for a in reduction.original.agents})
