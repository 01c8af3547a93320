"""Command-line front end.

Exit status: 0 on success, 1 when the engine or the memorial store fails,
2 for usage errors and invalid scenario files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import memorial
from .consensus import boost_reward, ideal_distance, ideal_time, net_compete
from .errors import MirrorNetError, ScenarioError
from .neuron import CoreKind
from .race import GroupResponse, RaceOutcome, run_race
from .scenario import ScenarioSpec, parse_scenario
from .svg import neuron_svg

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class Options:
    """Scenario settings with command-line overrides applied."""

    def __init__(self, spec: ScenarioSpec, args: argparse.Namespace):
        self.spec = spec
        self.core = CoreKind(getattr(args, "core", "motor"))
        self.format = getattr(args, "format", None) or spec.output_format
        self.quantize_360 = getattr(args, "quantize_360", False) or spec.quantize_360
        experts = getattr(args, "experts", None)
        self.experts = experts if experts is not None else spec.experts


def _shown(response: float, quantize: bool) -> tuple[float, float]:
    if quantize:
        response = round(response * 360) / 360
    return response, (1.0 - response) * 100.0


def _json(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _deadline_line(deadline) -> str:
    unit = "s" if deadline.is_time else "length units"
    return f"deadline: {deadline.kind.value} {deadline.value:.6f} {unit}"


def _group_line(group: GroupResponse, quantize: bool) -> str:
    response, confidence = _shown(group.group_response, quantize)
    return (
        f"group {group.core.value:<8} phase={math.degrees(group.mean_wrapped_phase):8.2f} deg  "
        f"response={response:.4f}  confidence={confidence:5.1f}%  n={group.n}"
    )


def format_outcome(outcome: RaceOutcome, quantize: bool = False) -> str:
    lines = [_deadline_line(outcome.deadline)]
    header = (
        f"{'node':<12}{'elapsed':>12}{'distance':>12}"
        f"{'motor_deg':>11}{'resp_m':>8}{'conf_m':>8}"
        f"{'sens_deg':>11}{'resp_s':>8}{'conf_s':>8}"
    )
    lines += [header, "-" * len(header)]
    for s in outcome.states:
        rm, cm = _shown(s.response_motor, quantize)
        rs, cs = _shown(s.response_sensory, quantize)
        lines.append(
            f"{s.id:<12}{s.elapsed:12.4f}{s.distance:12.4f}"
            f"{math.degrees(s.wrapped_phase_motor):11.2f}{rm:8.4f}{cm:8.1f}"
            f"{math.degrees(s.wrapped_phase_sensory):11.2f}{rs:8.4f}{cs:8.1f}"
        )
    lines += [
        "",
        _group_line(outcome.group_motor, quantize),
        _group_line(outcome.group_sensory, quantize),
        f"prescription: {outcome.prescription.name} ({outcome.prescription_confidence:.1f}%)",
    ]
    return "\n".join(lines) + "\n"


def cmd_simulate(opts: Options) -> str:
    spec = opts.spec
    outcome = run_race(spec.pool, spec.deadline, quantize_degrees=spec.quantize_degrees)
    if opts.format == "json":
        record = memorial.RaceRecord(spec.request_type, spec.pool, spec.deadline, outcome)
        return _json(record.to_dict())
    return format_outcome(outcome, opts.quantize_360)


def cmd_compete(opts: Options) -> str:
    spec = opts.spec
    expert = net_compete(spec.pool, spec.deadline, opts.core, opts.experts)
    if opts.format == "json":
        return _json(expert.to_dict())
    lines = [
        _deadline_line(spec.deadline),
        f"expert network: core={opts.core.value} m={opts.experts}",
        f"{'rank':<6}{'node':<12}{'response':>10}{'confidence':>12}",
    ]
    for rank, member in enumerate(expert.members, start=1):
        response, confidence = _shown(member.response, opts.quantize_360)
        lines.append(f"{rank:<6}{member.id:<12}{response:10.4f}{confidence:11.1f}%")
    return "\n".join(lines) + "\n"


def cmd_boost(opts: Options) -> str:
    spec = opts.spec
    result = boost_reward(spec.pool, spec.deadline, opts.core, opts.experts)
    if opts.format == "json":
        return _json(result.to_dict())
    lines = [
        _deadline_line(spec.deadline),
        f"boost plan: core={opts.core.value} best={result.expert.best.id} experts={','.join(result.expert.ids)}",
    ]
    for plan in result.plans:
        lines.append(
            f"{plan.id:<12}β={plan.boost_factor:.4f}, +{plan.boost_percent:.2f}%  "
            f"velocity {plan.original_velocity:.4f} -> {plan.boosted_velocity:.4f}"
        )
    lines += [
        "",
        "before: " + _group_line(result.pre_group, opts.quantize_360),
        "after:  " + _group_line(result.post_group, opts.quantize_360),
    ]
    return "\n".join(lines) + "\n"


def cmd_ideal(opts: Options) -> str:
    spec = opts.spec
    run = ideal_time if spec.deadline.is_time else ideal_distance
    result = run(spec.pool, spec.deadline.value, opts.core)
    if opts.format == "json":
        return _json(result.to_dict())
    response, confidence = _shown(result.best_response, opts.quantize_360)
    instant = "none" if result.last_truth_instant is None else f"{result.last_truth_instant:.6f}"
    return "\n".join(
        [
            _deadline_line(spec.deadline),
            f"ideal: core={opts.core.value}",
            f"best node: {result.best_node}",
            f"best response: {response:.4f}",
            f"best confidence: {confidence:.1f}%",
            f"last truth instant: {instant}",
        ]
    ) + "\n"


def cmd_trace(opts: Options, node_id: str | None) -> str:
    pool = opts.spec.pool
    if node_id is None:
        amn = pool.request
    else:
        try:
            amn = pool.get(node_id)
        except KeyError:
            raise MirrorNetError(f"unknown node id {node_id!r}") from None
    return neuron_svg(amn)


def cmd_memorial(args: argparse.Namespace) -> str:
    store = memorial.MemorialStore(args.store)
    fmt = args.format or "table"
    if args.action == "stats":
        result = memorial.stats(store)
        if fmt == "json":
            return _json(result.to_dict())
        mean = "none" if result.mean_loss is None else f"{result.mean_loss:.6f}"
        lines = [f"records: {result.count}", f"labeled: {result.labeled}", f"mean loss: {mean}"]
        lines += [f"  {name}: {count}" for name, count in result.per_type.items()]
        return "\n".join(lines) + "\n"

    if args.scenario is None:
        raise ScenarioError("--scenario is required for this memorial command")
    spec = parse_scenario(args.scenario)
    opts = Options(spec, args)
    if args.action == "record":
        timestamp = args.timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds")
        record = memorial.RaceRecord.from_race(
            spec.request_type,
            spec.pool,
            spec.deadline,
            quantize_degrees=spec.quantize_degrees,
            timestamp=timestamp,
            user_decision=args.decision,
            correct_label=args.label,
        )
        record_id = store.append_record(record)
        if fmt == "json":
            return _json({"id": record_id, "request_type": spec.request_type})
        return f"recorded id {record_id} (request type {spec.request_type})\n"

    request_type = args.request_type or spec.request_type
    expert = memorial.expert_set(store, request_type, spec.deadline, opts.core, opts.experts)
    if fmt == "json":
        return _json(expert.to_dict())
    lines = [f"experts for {request_type}: core={opts.core.value} m={opts.experts}"]
    for rank, member in enumerate(expert.members, start=1):
        lines.append(f"{rank:<6}{member.id:<12}{member.response:10.4f}{member.confidence:11.1f}%")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--core", choices=[c.value for c in CoreKind], default="motor")
    common.add_argument("--format", choices=["table", "json"], default=None)
    common.add_argument("--experts", type=int, default=None, metavar="M")
    common.add_argument("--quantize-360", action="store_true", dest="quantize_360")

    parser = argparse.ArgumentParser(prog="mirrornet", description="Race mirror neurons to a deadline.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in [
        ("simulate", "run the race and print the prescription"),
        ("compete", "select the expert network"),
        ("boost", "plan velocity boosts for low performers"),
        ("ideal", "predict the best result at the deadline"),
        ("trace", "write an SVG of one neuron's traces"),
    ]:
        cmd = sub.add_parser(name, parents=[common], help=text)
        cmd.add_argument("--scenario", required=True, type=Path)
        if name == "trace":
            cmd.add_argument("--node", default=None, help="node id (default: the request neuron)")
            cmd.add_argument("--out", type=Path, default=None)

    mem = sub.add_parser("memorial", help="record races and query the memorial")
    mem.add_argument("action", choices=["record", "stats", "experts"])
    mem.add_argument("--store", required=True, type=Path)
    mem.add_argument("--scenario", type=Path, default=None)
    mem.add_argument("--decision", type=int, choices=[0, 1], default=None)
    mem.add_argument("--label", type=int, choices=[0, 1], default=None)
    mem.add_argument("--timestamp", default=None)
    mem.add_argument("--request-type", dest="request_type", default=None)
    mem.add_argument("--core", choices=[c.value for c in CoreKind], default="motor")
    mem.add_argument("--format", choices=["table", "json"], default=None)
    mem.add_argument("--experts", type=int, default=None, metavar="M")
    return parser


def run(args: argparse.Namespace) -> str:
    if args.command == "memorial":
        return cmd_memorial(args)
    if args.experts is not None and args.experts < 1:
        raise ScenarioError("--experts must be at least 1")
    opts = Options(parse_scenario(args.scenario), args)
    if args.command == "trace":
        svg = cmd_trace(opts, args.node)
        if args.out is None:
            return svg
        try:
            args.out.write_text(svg, encoding="utf-8")
        except OSError as exc:
            raise MirrorNetError(f"cannot write {args.out}: {exc}") from exc
        return f"wrote {args.out}\n"
    commands = {"simulate": cmd_simulate, "compete": cmd_compete, "boost": cmd_boost, "ideal": cmd_ideal}
    return commands[args.command](opts)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        output = run(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MirrorNetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    sys.stdout.write(output)
    return EXIT_OK
