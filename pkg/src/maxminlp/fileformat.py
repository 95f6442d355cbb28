"""Text formats, built-in example instances, and the seeded generator.

Instance files are line based.  ``#`` starts a comment, blank lines are
ignored, and ids match ``[A-Za-z0-9_]+``::

    maxmin 1
    agent <id>
    party <id> : <agent-id> [<agent-id> ...]
    resource <id> : <agent-id> [<agent-id> ...]

Agents must be declared before they are referenced; duplicate ids within a
kind are errors.  Assignment files hold one ``x <agent-id> <num>/<den>``
line per agent (den >= 1, gcd(num, den) = 1) and end with an
``omega <num>/<den>`` line.

The random generator uses ``random.Random`` (Mersenne Twister) seeded with
a 64-bit integer, so identical seeds reproduce identical instances on any
platform.  Byte-level equality across other implementations is not a goal;
structure counts under a shared seed are.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import GenerationError, InputError, ParseError
from .model import Assignment, Instance, validate

_ID_RE = re.compile(r"[A-Za-z0-9_]+\Z")
_GENERATOR_ATTEMPTS = 100


def _meaningful_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _check_id(token: str, lineno: int) -> str:
    if not _ID_RE.match(token):
        raise ParseError(f"bad id {token!r}", lineno)
    return token


def parse_instance(text: str | bytes) -> Instance:
    """Parse the instance file format into an Instance."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = list(_meaningful_lines(text))
    if not lines:
        raise ParseError("no header")
    first_no, first = lines[0]
    if first.split() != ["maxmin", "1"]:
        raise ParseError("expected header 'maxmin 1'", first_no)

    agents: list[str] = []
    declared: set[str] = set()
    parties: dict[str, tuple[str, ...]] = {}
    resources: dict[str, tuple[str, ...]] = {}

    def read_support(tokens: list[str], lineno: int, kind: str) -> tuple[str, tuple[str, ...]]:
        if len(tokens) < 4 or tokens[2] != ":":
            raise ParseError(f"expected '{kind} <id> : <agent> ...'", lineno)
        label = _check_id(tokens[1], lineno)
        members = []
        for tok in tokens[3:]:
            member = _check_id(tok, lineno)
            if member not in declared:
                raise ParseError(f"{kind} {label} references undeclared agent {member}", lineno)
            if member in members:
                raise ParseError(f"duplicate agent {member} in {kind} {label}", lineno)
            members.append(member)
        return label, tuple(members)

    for lineno, line in lines[1:]:
        tokens = line.split()
        keyword = tokens[0]
        if keyword == "agent":
            if len(tokens) != 2:
                raise ParseError("expected 'agent <id>'", lineno)
            name = _check_id(tokens[1], lineno)
            if name in declared:
                raise ParseError(f"agent {name} declared twice", lineno)
            declared.add(name)
            agents.append(name)
        elif keyword == "party":
            label, members = read_support(tokens, lineno, "party")
            if label in parties:
                raise ParseError(f"party {label} declared twice", lineno)
            parties[label] = members
        elif keyword == "resource":
            label, members = read_support(tokens, lineno, "resource")
            if label in resources:
                raise ParseError(f"resource {label} declared twice", lineno)
            resources[label] = members
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno)
    return Instance(agents, parties, resources)


def serialize_instance(instance: Instance) -> str:
    """Canonical text form; parsing it back reproduces the instance exactly."""
    lines = ["maxmin 1"]
    lines += [f"agent {a}" for a in instance.agents]
    lines += [f"party {k} : {' '.join(m)}" for k, m in instance.parties.items()]
    lines += [f"resource {i} : {' '.join(m)}" for i, m in instance.resources.items()]
    return "\n".join(lines) + "\n"


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_rational(token: str, lineno: int | None = None) -> Fraction:
    m = re.match(r"(-?\d+)/(\d+)\Z", token)
    if not m:
        raise ParseError(f"bad rational {token!r}", lineno)
    num, den = int(m.group(1)), int(m.group(2))
    if den < 1:
        raise ParseError(f"denominator must be >= 1 in {token!r}", lineno)
    if gcd(abs(num), den) != 1:
        raise ParseError(f"rational {token!r} is not in lowest terms", lineno)
    return Fraction(num, den)


def serialize_assignment(x: Assignment, omega: Fraction) -> str:
    lines = [f"x {agent} {format_rational(v)}" for agent, v in x.values.items()]
    lines.append(f"omega {format_rational(omega)}")
    return "\n".join(lines) + "\n"


def parse_assignment(text: str | bytes) -> tuple[Assignment, Fraction]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    values: dict[str, Fraction] = {}
    omega: Fraction | None = None
    for lineno, line in _meaningful_lines(text):
        tokens = line.split()
        if tokens[0] == "x" and len(tokens) == 3:
            if omega is not None:
                raise ParseError("x line after omega line", lineno)
            agent = _check_id(tokens[1], lineno)
            if agent in values:
                raise ParseError(f"agent {agent} assigned twice", lineno)
            value = parse_rational(tokens[2], lineno)
            if value < 0:
                raise ParseError(f"negative activity for agent {agent}", lineno)
            values[agent] = value
        elif tokens[0] == "omega" and len(tokens) == 2:
            if omega is not None:
                raise ParseError("duplicate omega line", lineno)
            omega = parse_rational(tokens[1], lineno)
        else:
            raise ParseError(f"expected 'x <id> <num>/<den>' or 'omega <num>/<den>'", lineno)
    if omega is None:
        raise ParseError("missing omega line")
    return Assignment(values), omega


# Built-in instances.  "isp" is a 14-link access network with seven customer
# parties and five capacity resources; its optimum is 5/7.  "prelim" is the
# five-agent example whose optimum is 2/3.

_BUILTIN_TEXTS = {
    "isp": (
        "maxmin 1\n"
        + "".join(f"agent {j}\n" for j in range(1, 15))
        + "party k1 : 1 2\n"
        "party k2 : 3 4\n"
        "party k3 : 5 6\n"
        "party k4 : 7 8\n"
        "party k5 : 9 10\n"
        "party k6 : 11 12\n"
        "party k7 : 13 14\n"
        "resource i1 : 1 3 5\n"
        "resource i2 : 2 9\n"
        "resource i3 : 4 7 11\n"
        "resource i4 : 6 8 13\n"
        "resource i5 : 10 12 14\n"
    ),
    "prelim": (
        "maxmin 1\n"
        "agent 1\n"
        "agent 2\n"
        "agent 3\n"
        "agent 4\n"
        "agent 5\n"
        "party k1 : 1\n"
        "party k2 : 2 3\n"
        "resource i1 : 1 2\n"
        "resource i2 : 1 3\n"
        "resource i3 : 3 4\n"
        "resource i4 : 4 5\n"
    ),
}


def builtin_instance(name: str) -> Instance:
    """One of the built-in example instances ("isp" or "prelim")."""
    try:
        text = _BUILTIN_TEXTS[name]
    except KeyError:
        known = ", ".join(sorted(_BUILTIN_TEXTS))
        raise InputError(f"unknown builtin instance {name!r} (known: {known})") from None
    return parse_instance(text)


@dataclass(frozen=True)
class GeneratorParams:
    """Parameters for the seeded bounded-degree instance generator.

    Keep max_vk <= 2 when the instance is meant to feed the solve pipeline,
    which only supports party supports of size at most two.
    """

    n_agents: int
    max_vi: int
    max_vk: int
    max_iv: int
    max_kv: int
    n_parties: int
    n_resources: int
    seed: int

    def __post_init__(self):
        caps = (self.max_vi, self.max_vk, self.max_iv, self.max_kv)
        if min(caps) < 1:
            raise InputError("all degree caps must be >= 1")
        if self.n_agents < 1 or self.n_parties < 1 or self.n_resources < 1:
            raise InputError("need at least one agent, party, and resource")


def random_instance(params: GeneratorParams) -> Instance:
    """Random valid instance respecting all four degree caps.

    Rejection sampling: each agent joins 1..max_iv resources and 1..max_kv
    parties; oversubscribed supports are discarded and the attempt is
    retried (up to 100 times) if the result is invalid.  Deterministic in
    the seed.
    """
    rng = random.Random(params.seed)
    party_ids = [f"k{j}" for j in range(1, params.n_parties + 1)]
    resource_ids = [f"i{j}" for j in range(1, params.n_resources + 1)]
    agent_ids = [f"v{j}" for j in range(1, params.n_agents + 1)]

    for _ in range(_GENERATOR_ATTEMPTS):
        party_members: dict[str, list[str]] = {k: [] for k in party_ids}
        resource_members: dict[str, list[str]] = {i: [] for i in resource_ids}
        for agent in agent_ids:
            n_res = rng.randint(1, min(params.max_iv, len(resource_ids)))
            for label in rng.sample(resource_ids, n_res):
                resource_members[label].append(agent)
            n_par = rng.randint(1, min(params.max_kv, len(party_ids)))
            for label in rng.sample(party_ids, n_par):
                party_members[label].append(agent)
        parties = {
            k: tuple(ms)
            for k, ms in party_members.items()
            if ms and len(ms) <= params.max_vk
        }
        resources = {
            i: tuple(ms)
            for i, ms in resource_members.items()
            if ms and len(ms) <= params.max_vi
        }
        if not parties or not resources:
            continue
        candidate = Instance(agent_ids, parties, resources)
        if not validate(candidate):
            return candidate
    raise GenerationError(
        f"no valid instance for {params} after {_GENERATOR_ATTEMPTS} attempts"
    )
