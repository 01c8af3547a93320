"""Strict JSON scenario documents.

A scenario lists the neurons to race and how to race them::

    {
      "profiles": [
        {"id": "alice", "reaction_score": 3, "emotion_score": 4, "age": 50},
        {"reaction_score": 1, "emotion_score": 1, "age": 100, "v_m": 1.0, "r1": 1}
      ],
      "config": {"intention_coefficient": 3, "velocity_scale": 100,
                 "sensory_velocity_ratio": 1, "quantize_degrees": false},
      "deadline": {"time": "pi/2"},
      "request_type": "binary",
      "request_index": 1,
      "algorithms": {"experts": 3},
      "output": {"format": "table", "quantize_360": false}
    }

Only ``profiles`` and ``deadline`` are required. Per-profile overrides
``r1``, ``r2``, ``v_m`` and ``v_s`` replace the mapped values; overriding
``r1`` rescales the intention wheel and overriding ``v_m`` alone rescales
``v_s``. Deadline magnitudes may be numbers or strings such as ``"pi/2"``
or ``"3*pi"``. Unknown keys are rejected.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import MirrorNetError, ScenarioError
from .neuron import AMN, NeuronConfig, UserProfile, build_neuron
from .race import Deadline, RacePool

_TOP_KEYS = {"profiles", "config", "deadline", "request_type", "request_index", "algorithms", "output"}
_PROFILE_KEYS = {"id", "reaction_score", "emotion_score", "age", "r1", "r2", "v_m", "v_s"}
_CONFIG_KEYS = {"intention_coefficient", "velocity_scale", "sensory_velocity_ratio", "quantize_degrees"}
_ALGORITHM_KEYS = {"experts"}
_OUTPUT_KEYS = {"format", "quantize_360"}

_NUM = r"(\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_PI_EXPR = re.compile(rf"^\s*(?:(?P<a>{_NUM})\s*\*?\s*)?pi(?:\s*/\s*(?P<b>{_NUM}))?\s*$")


@dataclass(frozen=True)
class ScenarioSpec:
    profiles: tuple[UserProfile, ...]
    pool: RacePool
    config: NeuronConfig
    deadline: Deadline
    request_type: str = "binary"
    experts: int = 3
    quantize_degrees: bool = False
    output_format: str = "table"
    quantize_360: bool = False


def _number(value, where: str) -> float:
    if isinstance(value, bool):
        raise ScenarioError("expected a number, got a boolean", where)
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        match = _PI_EXPR.match(value)
        if match:
            a = float(match.group("a")) if match.group("a") else 1.0
            b = float(match.group("b")) if match.group("b") else 1.0
            if b == 0:
                raise ScenarioError("division by zero", where)
            return a * math.pi / b
    raise ScenarioError(f"expected a number or pi expression, got {value!r}", where)


def _positive(value, where: str) -> float:
    x = _number(value, where)
    if not (math.isfinite(x) and x > 0):
        raise ScenarioError(f"must be positive, got {value!r}", where)
    return x


def _integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"expected an integer, got {value!r}", where)
    return value


def _boolean(value, where: str) -> bool:
    if not isinstance(value, bool):
        raise ScenarioError(f"expected true or false, got {value!r}", where)
    return value


def _object(value, where: str, allowed: set[str]) -> dict:
    if not isinstance(value, dict):
        raise ScenarioError("expected an object", where)
    unknown = sorted(set(value) - allowed)
    if unknown:
        prefix = f"{where}." if where else ""
        raise ScenarioError(f"unknown key {unknown[0]!r}", prefix + unknown[0])
    return value


def _config(data: dict) -> tuple[NeuronConfig, bool]:
    cfg = _object(data, "config", _CONFIG_KEYS)
    kwargs = {}
    for key in ("intention_coefficient", "velocity_scale", "sensory_velocity_ratio"):
        if key in cfg:
            kwargs[key] = _positive(cfg[key], f"config.{key}")
    quantize = _boolean(cfg["quantize_degrees"], "config.quantize_degrees") if "quantize_degrees" in cfg else False
    try:
        return NeuronConfig(**kwargs), quantize
    except MirrorNetError as exc:
        raise ScenarioError(str(exc), "config") from exc


def _neuron(entry, index: int, config: NeuronConfig, used: set[str]) -> tuple[UserProfile, AMN]:
    where = f"profiles[{index}]"
    entry = _object(entry, where, _PROFILE_KEYS)
    for key in ("reaction_score", "emotion_score", "age"):
        if key not in entry:
            raise ScenarioError("missing required field", f"{where}.{key}")
    scores = {}
    for key in ("reaction_score", "emotion_score"):
        scores[key] = _integer(entry[key], f"{where}.{key}")
        if not 1 <= scores[key] <= 5:
            raise ScenarioError(f"must be in 1..5, got {scores[key]}", f"{where}.{key}")
    age = _positive(entry["age"], f"{where}.age")
    node_id = entry.get("id", f"n{index + 1:02d}")
    if not isinstance(node_id, str) or not node_id:
        raise ScenarioError("id must be a non-empty string", f"{where}.id")
    if node_id in used:
        raise ScenarioError(f"duplicate id {node_id!r}", f"{where}.id")
    used.add(node_id)
    profile = UserProfile(scores["reaction_score"], scores["emotion_score"], age)
    amn = build_neuron(profile, config, node_id)
    overrides = {key: _positive(entry[key], f"{where}.{key}") for key in ("r1", "r2", "v_m", "v_s") if key in entry}
    if "r1" in overrides:
        overrides["R1"] = config.intention_coefficient * overrides["r1"]
    if "v_m" in overrides and "v_s" not in overrides:
        overrides["v_s"] = config.sensory_velocity_ratio * overrides["v_m"]
    return profile, replace(amn, **overrides)


def _deadline(data) -> Deadline:
    if not isinstance(data, dict):
        raise ScenarioError("expected an object with 'time' or 'distance'", "deadline")
    _object(data, "deadline", {"time", "distance"})
    if len(data) != 1:
        raise ScenarioError("exactly one of 'time' or 'distance' is required", "deadline")
    (key, value), = data.items()
    magnitude = _positive(value, f"deadline.{key}")
    return Deadline.time(magnitude) if key == "time" else Deadline.distance(magnitude)


def scenario_from_dict(data) -> ScenarioSpec:
    doc = _object(data, "", _TOP_KEYS)
    for key in ("profiles", "deadline"):
        if key not in doc:
            raise ScenarioError("missing required field", key)
    config, quantize_degrees = _config(doc.get("config", {}))
    entries = doc["profiles"]
    if not isinstance(entries, list) or not entries:
        raise ScenarioError("at least one profile is required", "profiles")
    used: set[str] = set()
    built = [_neuron(entry, i, config, used) for i, entry in enumerate(entries)]
    request_index = None
    if "request_index" in doc:
        request_index = _integer(doc["request_index"], "request_index")
        if not 0 <= request_index < len(built):
            raise ScenarioError(f"out of range for {len(built)} profiles", "request_index")
    request_type = doc.get("request_type", "binary")
    if not isinstance(request_type, str) or not request_type:
        raise ScenarioError("must be a non-empty string", "request_type")
    algorithms = _object(doc.get("algorithms", {}), "algorithms", _ALGORITHM_KEYS)
    experts = _integer(algorithms.get("experts", 3), "algorithms.experts")
    if experts < 1:
        raise ScenarioError("must be at least 1", "algorithms.experts")
    output = _object(doc.get("output", {}), "output", _OUTPUT_KEYS)
    output_format = output.get("format", "table")
    if output_format not in ("table", "json"):
        raise ScenarioError(f"must be 'table' or 'json', got {output_format!r}", "output.format")
    quantize_360 = _boolean(output.get("quantize_360", False), "output.quantize_360")
    return ScenarioSpec(
        profiles=tuple(p for p, _ in built),
        pool=RacePool(tuple(a for _, a in built), request_index),
        config=config,
        deadline=_deadline(doc["deadline"]),
        request_type=request_type,
        experts=experts,
        quantize_degrees=quantize_degrees,
        output_format=output_format,
        quantize_360=quantize_360,
    )


def parse_scenario(path) -> ScenarioSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON: {exc.msg}", lineno=exc.lineno) from exc
    return scenario_from_dict(data)
