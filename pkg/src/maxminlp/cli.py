"""Command-line interface.

Commands: solve, oracle, compare, gen, locality.  Exit codes are stable:
0 success, 1 internal failure (including a violated guarantee), 2 bad
input, 3 size cap exceeded, 4 violated precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .algorithm import guarantee, locality_check, make_locality_pair, solve
from .errors import (
    InputError,
    MaxMinError,
    PreconditionError,
    SizeCapError,
)
from .fileformat import (
    GeneratorParams,
    builtin_instance,
    format_rational,
    parse_instance,
    random_instance,
    serialize_assignment,
    serialize_instance,
)
from .model import Instance
from .oracle import DEFAULT_AGENT_CAP, optimum, serialize_oracle_result

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_PRECONDITION = 4

DEFAULT_RADIUS = 3


@dataclass
class RunConfig:
    command: str
    instance_path: str | None = None
    builtin: str | None = None
    radius: int = DEFAULT_RADIUS
    seed: int = 0
    out_format: str = "text"
    out: str | None = None
    cap: int = DEFAULT_AGENT_CAP
    trials: int = 100
    edit_inside: bool = False
    gen: GeneratorParams | None = None


def _rat(value: Fraction | None) -> str | None:
    return None if value is None else format_rational(value)


def _load_instance(config: RunConfig) -> Instance:
    if config.builtin is not None:
        return builtin_instance(config.builtin)
    assert config.instance_path is not None
    try:
        with open(config.instance_path, "rb") as fh:
            return parse_instance(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {config.instance_path}: {exc}") from exc


def _emit(config: RunConfig, record: dict, text_lines: list[str]) -> None:
    if config.out_format == "structured":
        print(json.dumps(record))
    else:
        for line in text_lines:
            print(line)


def _write_out(config: RunConfig, payload: str) -> None:
    if config.out is not None:
        try:
            with open(config.out, "w", encoding="utf-8") as fh:
                fh.write(payload)
        except OSError as exc:
            raise InputError(f"cannot write {config.out}: {exc}") from exc


def cmd_solve(config: RunConfig) -> int:
    instance = _load_instance(config)
    assignment, report = solve(instance, config.radius)
    payload = serialize_assignment(assignment, report.omega)
    _write_out(config, payload)
    record = {
        "command": "solve",
        "radius": report.radius,
        "delta": report.delta,
        "omega": _rat(report.omega),
        "guarantee": _rat(report.guarantee_factor),
        "feasible": report.feasible,
        "x": {a: _rat(v) for a, v in assignment.values.items()},
        "timings": report.timings,
    }
    lines = [] if config.out else payload.splitlines()
    lines += [
        f"radius {report.radius}",
        f"delta {report.delta}",
        f"guarantee {_rat(report.guarantee_factor) or 'none'}",
        f"feasible {int(report.feasible)}",
    ]
    lines += [f"time {stage} {seconds:.6f}" for stage, seconds in report.timings.items()]
    _emit(config, record, lines)
    return EXIT_OK


def cmd_oracle(config: RunConfig) -> int:
    instance = _load_instance(config)
    result = optimum(instance, max_agents=config.cap)
    payload = serialize_oracle_result(result)
    _write_out(config, payload)
    record = {
        "command": "oracle",
        "omega_star": _rat(result.omega_star),
        "x": {a: _rat(v) for a, v in result.witness.values.items()},
        "iterations": result.iterations,
    }
    _emit(config, record, payload.splitlines())
    return EXIT_OK


def cmd_compare(config: RunConfig) -> int:
    instance = _load_instance(config)
    assignment, report = solve(instance, config.radius)
    result = optimum(instance, max_agents=config.cap)
    note = None
    if result.omega_star == 0:
        ratio: Fraction | None = Fraction(1)  # by convention
        note = "omega-star-zero"
    elif report.omega == 0:
        ratio = None  # infinite
    else:
        ratio = result.omega_star / report.omega
    within = None
    if report.guarantee_factor is not None:
        within = ratio is not None and ratio <= report.guarantee_factor
    record = {
        "command": "compare",
        "radius": report.radius,
        "omega": _rat(report.omega),
        "omega_star": _rat(result.omega_star),
        "ratio": "inf" if ratio is None else _rat(ratio),
        "guarantee": _rat(report.guarantee_factor),
        "within_guarantee": within,
        "note": note,
    }
    lines = [
        f"radius {report.radius}",
        f"omega {_rat(report.omega)}",
        f"omega_star {_rat(result.omega_star)}",
        f"ratio {'inf' if ratio is None else _rat(ratio)}",
        f"guarantee {_rat(report.guarantee_factor) or 'none'}",
        f"within_guarantee {'none' if within is None else int(within)}",
    ]
    if note:
        lines.append(f"note {note}")
    _emit(config, record, lines)
    if within is False:
        print("guarantee violated", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_gen(config: RunConfig) -> int:
    assert config.gen is not None
    instance = random_instance(config.gen)
    payload = serialize_instance(instance)
    _write_out(config, payload)
    record = {
        "command": "gen",
        "agents": len(instance.agents),
        "parties": len(instance.parties),
        "resources": len(instance.resources),
        "instance": payload,
    }
    _emit(config, record, payload.splitlines())
    return EXIT_OK


def cmd_locality(config: RunConfig) -> int:
    failures: list[dict] = []
    for trial in range(config.trials):
        base, twin, probe = make_locality_pair(
            config.radius, config.seed + trial, edit_inside=config.edit_inside
        )
        verdict = locality_check(base, twin, probe, config.radius)
        if not verdict.equal:
            failures.append(
                {
                    "trial": trial,
                    "probe": verdict.probe,
                    "value_a": _rat(verdict.value_a),
                    "value_b": _rat(verdict.value_b),
                }
            )
    passed = config.trials - len(failures)
    record = {
        "command": "locality",
        "radius": config.radius,
        "trials": config.trials,
        "passed": passed,
        "failures": failures,
    }
    lines = [f"trials {config.trials} passed {passed}"]
    lines += [
        f"fail trial {f['trial']} probe {f['probe']} {f['value_a']} != {f['value_b']}"
        for f in failures
    ]
    _emit(config, record, lines)
    return EXIT_OK if not failures else EXIT_INTERNAL


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxminlp",
        description="Local approximation and exact oracle for 0/1 max-min packing LPs",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--instance", help="instance file to read")
        group.add_argument("--builtin", help="built-in instance name (isp, prelim)")

    def add_common(p: argparse.ArgumentParser, radius: bool = True) -> None:
        if radius:
            p.add_argument("--radius", type=int, default=DEFAULT_RADIUS,
                           help=f"local horizon parameter R (default {DEFAULT_RADIUS})")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("--out", help="write the primary artifact to this file")

    p_solve = sub.add_parser("solve", help="run the local approximation pipeline")
    add_source(p_solve)
    add_common(p_solve)

    p_oracle = sub.add_parser("oracle", help="exact rational optimum")
    add_source(p_oracle)
    add_common(p_oracle, radius=False)
    p_oracle.add_argument("--cap", type=int, default=DEFAULT_AGENT_CAP,
                          help="refuse instances with more agents than this")

    p_compare = sub.add_parser("compare", help="solve, then verify against the oracle")
    add_source(p_compare)
    add_common(p_compare)
    p_compare.add_argument("--cap", type=int, default=DEFAULT_AGENT_CAP)

    p_gen = sub.add_parser("gen", help="generate a random bounded-degree instance")
    add_common(p_gen, radius=False)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--agents", type=int, default=12)
    p_gen.add_argument("--parties", type=int, default=8)
    p_gen.add_argument("--resources", type=int, default=12)
    p_gen.add_argument("--max-vi", type=int, default=3)
    p_gen.add_argument("--max-vk", type=int, default=2)
    p_gen.add_argument("--max-iv", type=int, default=2)
    p_gen.add_argument("--max-kv", type=int, default=1)

    p_loc = sub.add_parser("locality", help="paired-instance locality trials")
    add_common(p_loc)
    p_loc.add_argument("--seed", type=int, default=0)
    p_loc.add_argument("--trials", type=int, default=100)
    p_loc.add_argument("--edit-inside", action="store_true",
                       help="apply the edit inside the probe ball (must be refused)")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=args.command)
    for field in ("instance", "builtin", "radius", "out", "cap", "trials", "seed"):
        if hasattr(args, field):
            value = getattr(args, field)
            target = "instance_path" if field == "instance" else field
            setattr(config, target, value)
    if hasattr(args, "format"):
        config.out_format = args.format
    if hasattr(args, "edit_inside"):
        config.edit_inside = args.edit_inside
    if args.command == "gen":
        config.gen = GeneratorParams(
            n_agents=args.agents,
            max_vi=args.max_vi,
            max_vk=args.max_vk,
            max_iv=args.max_iv,
            max_kv=args.max_kv,
            n_parties=args.parties,
            n_resources=args.resources,
            seed=args.seed,
        )
    return config


_COMMANDS = {
    "solve": cmd_solve,
    "oracle": cmd_oracle,
    "compare": cmd_compare,
    "gen": cmd_gen,
    "locality": cmd_locality,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if getattr(args, "radius", 1) < 1:
        print("error: radius must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "trials", 0) < 0:
        print("error: trials must be >= 0", file=sys.stderr)
        return EXIT_INPUT
    config = _config_from_args(args)
    try:
        return _COMMANDS[config.command](config)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MaxMinError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
