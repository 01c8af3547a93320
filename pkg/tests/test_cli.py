import json
import math
import re
import subprocess
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np
import pytest

from mirrornet.cli import main
from mirrornet.errors import ScenarioError
from mirrornet.memorial import MemorialStore, RaceRecord
from mirrornet.scenario import parse_scenario, scenario_from_dict

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"
SVG_NS = "{http://www.w3.org/2000/svg}"


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "mirrornet", *map(str, args)], capture_output=True, text=True)


def call(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_minimal_scenario_fills_defaults():
    spec = scenario_from_dict({"profiles": [{"reaction_score": 2, "emotion_score": 3, "age": 40}], "deadline": {"time": 2}})
    assert spec.config.intention_coefficient == 3
    assert spec.config.velocity_scale == 100
    assert spec.config.sensory_velocity_ratio == 1
    assert spec.experts == 3
    node = spec.pool.nodes[0]
    assert (node.r1, node.r2, node.R1, node.v_m, node.v_s) == (2, 3, 6, 2.5, 2.5)
    assert spec.deadline.value == 2 and spec.deadline.is_time


def test_parse_overrides_and_pi_expressions():
    spec = parse_scenario(DATA / "boost.json")
    assert spec.deadline.value == math.pi / 2
    assert spec.pool.get("n2").v_m == 3 and spec.pool.get("n2").v_s == 3
    spec = scenario_from_dict(
        {"profiles": [{"reaction_score": 2, "emotion_score": 3, "age": 40, "r1": 1.5}], "deadline": {"distance": "3*pi"}}
    )
    assert spec.pool.nodes[0].R1 == 4.5
    assert spec.deadline.value == pytest.approx(3 * math.pi)


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"profiles": [{"reaction_score": 1, "emotion_score": 1, "age": 0}], "deadline": {"time": 1}}, "profiles[0].age"),
        ({"profiles": [{"reaction_score": 1, "emotion_score": 1}], "deadline": {"time": 1}}, "profiles[0].age"),
        ({"profiles": [{"reaction_score": 9, "emotion_score": 1, "age": 3}], "deadline": {"time": 1}}, "profiles[0].reaction_score"),
        ({"profiles": [{"reaction_score": 1, "emotion_score": 1, "age": 3, "v_m": -2}], "deadline": {"time": 1}}, "profiles[0].v_m"),
        ({"profiles": [{"reaction_score": 1, "emotion_score": 1, "age": 3}], "deadline": {"time": 1}, "extra": 1}, "extra"),
        ({"profiles": [{"reaction_score": 1, "emotion_score": 1, "age": 3, "mood": 1}], "deadline": {"time": 1}}, "profiles[0].mood"),
        ({"profiles": [], "deadline": {"time": 1}}, "profiles"),
        ({"profiles": [{"reaction_score": 1, "emotion_score": 1, "age": 3}]}, "deadline"),
        ({"profiles": [{"reaction_score": 1, "emotion_score": 1, "age": 3}], "deadline": {"time": 1, "distance": 2}}, "deadline"),
        ({"profiles": [{"reaction_score": 1, "emotion_score": 1, "age": 3}], "deadline": {"time": "tau"}}, "deadline.time"),
        ({"profiles": [{"reaction_score": 1, "emotion_score": 1, "age": 3}], "deadline": {"time": 1}, "config": {"velocity_scale": 0}}, "config.velocity_scale"),
    ],
)
def test_parse_errors_name_the_field(doc, field):
    with pytest.raises(ScenarioError) as info:
        scenario_from_dict(doc)
    assert info.value.field == field
    assert field in str(info.value)


def test_broken_json_reports_line():
    with pytest.raises(ScenarioError) as info:
        parse_scenario(DATA / "broken.json")
    assert info.value.lineno == 3


def test_simulate_golden(capsys):
    code, out, _ = call(capsys, "simulate", "--scenario", DATA / "eight_neurons.json")
    assert code == 0
    assert out == (GOLDEN / "simulate_eight_neurons.txt").read_text()
    assert "prescription: YES (75.0%)" in out


def test_simulate_is_byte_identical_across_processes():
    first = run_cli("simulate", "--scenario", DATA / "eight_neurons.json")
    second = run_cli("simulate", "--scenario", DATA / "eight_neurons.json")
    assert first.returncode == 0
    assert first.stdout == second.stdout


def test_simulate_no(capsys):
    code, out, _ = call(capsys, "simulate", "--scenario", DATA / "high_responses.json")
    assert code == 0
    assert "prescription: NO (80.0%)" in out


def test_simulate_json_round_trips_through_record_schema(capsys):
    code, out, _ = call(capsys, "simulate", "--scenario", DATA / "mixed.json", "--format", "json")
    assert code == 0
    record = RaceRecord.from_dict(json.loads(out))
    assert record.request_type == "market-signal"
    assert record.pool.request.id == "carol"
    assert record.replay() == record.outcome


def test_quantize_360_rounds_displayed_responses(capsys):
    _, out, _ = call(capsys, "simulate", "--scenario", DATA / "mixed.json", "--quantize-360")
    for token in re.findall(r"response=(\d\.\d{4})", out):
        value = float(token)
        assert abs(value * 360 - round(value * 360)) < 360 * 5e-5


def test_compete(capsys):
    code, out, _ = call(capsys, "compete", "--scenario", DATA / "compete.json")
    assert code == 0
    rows = [line.split() for line in out.splitlines() if re.match(r"^\d+\s", line)]
    assert [r[1] for r in rows] == ["B", "A"]
    assert [float(r[2]) for r in rows] == [0.1, 0.3]


def test_compete_sensory_and_json(capsys):
    code, out, _ = call(capsys, "compete", "--scenario", DATA / "mixed.json", "--core", "sensory", "--experts", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["core"] == "sensory" and [m["id"] for m in data["members"]] == ["alice"]


def test_boost(capsys):
    code, out, _ = call(capsys, "boost", "--scenario", DATA / "boost.json")
    assert code == 0
    assert out == (GOLDEN / "boost.txt").read_text()
    row = next(line for line in out.splitlines() if line.startswith("n2"))
    assert "β=1.6667, +66.67%" in row
    assert "after:  group motor" in out and "response=0.2500" in out.split("after:")[1]


def test_boost_on_distance_exits_one():
    result = run_cli("boost", "--scenario", DATA / "boost_distance.json")
    assert result.returncode == 1
    assert "boost requires a time deadline" in result.stderr


def test_ideal_without_completed_revolution(capsys):
    code, out, _ = call(capsys, "ideal", "--scenario", DATA / "ideal_none.json")
    assert code == 0
    assert "last truth instant: none" in out


@pytest.mark.parametrize("name", ["bad_age.json", "unknown_key.json", "broken.json"])
def test_malformed_scenario_exits_two(name):
    result = run_cli("simulate", "--scenario", DATA / name)
    assert result.returncode == 2
    assert result.stdout == ""


def test_bad_age_message_names_age():
    assert "age" in run_cli("simulate", "--scenario", DATA / "bad_age.json").stderr


def test_missing_scenario_file_exits_two(tmp_path):
    assert run_cli("simulate", "--scenario", tmp_path / "nope.json").returncode == 2


def test_usage_error_exits_two():
    assert run_cli("frobnicate").returncode == 2
    assert run_cli("simulate").returncode == 2


def _intention_points(svg_text):
    root = ET.fromstring(svg_text)
    paths = root.findall(f"{SVG_NS}path")
    by_class = {p.get("class"): p for p in paths}
    d = by_class["intention"].get("d")
    pts = np.array([[float(v) for v in pair.split(",")] for pair in re.findall(r"-?\d+\.\d+,-?\d+\.\d+", d)])
    return paths, pts


def test_trace_svg(tmp_path, capsys):
    out_path = tmp_path / "n01.svg"
    code, _, _ = call(capsys, "trace", "--scenario", DATA / "eight_neurons.json", "--node", "n01", "--out", out_path)
    assert code == 0
    text = out_path.read_text()
    assert text == (GOLDEN / "trace_n01.svg").read_text()
    paths, pts = _intention_points(text)
    assert len(paths) == 3
    assert sorted(p.get("class") for p in paths) == ["intention", "motor", "sensory"]
    assert all(p.find(f"{SVG_NS}title") is not None for p in paths)
    dist = np.hypot(pts[:-1, 0], pts[:-1, 1])
    assert int(np.sum(np.abs(dist - dist.max()) < 1e-3)) == 3


def test_trace_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run_cli("trace", "--scenario", DATA / "mixed.json", "--node", "bob", "--out", a)
    run_cli("trace", "--scenario", DATA / "mixed.json", "--node", "bob", "--out", b)
    assert a.read_bytes() == b.read_bytes()


def test_trace_unknown_node_exits_one():
    result = run_cli("trace", "--scenario", DATA / "eight_neurons.json", "--node", "zz")
    assert result.returncode == 1


def test_memorial_commands(tmp_path, capsys):
    store = tmp_path / "m.jsonl"
    code, out, _ = call(capsys, "memorial", "stats", "--store", store)
    assert code == 0 and "records: 0" in out and "mean loss: none" in out

    code, out, _ = call(
        capsys, "memorial", "record", "--store", store, "--scenario", DATA / "eight_neurons.json",
        "--label", "0", "--decision", "1", "--timestamp", "2026-01-01T00:00:00Z",
    )
    assert code == 0 and out == "recorded id 1 (request type binary)\n"

    code, out, _ = call(capsys, "memorial", "stats", "--store", store, "--format", "json")
    data = json.loads(out)
    assert data["count"] == 1 and data["mean_loss"] == pytest.approx(0.25)

    (record,) = MemorialStore(store).load_records()
    assert record.timestamp == "2026-01-01T00:00:00Z" and record.user_decision == 1

    code, out, _ = call(capsys, "memorial", "experts", "--store", store, "--scenario", DATA / "eight_neurons.json", "--experts", "2")
    assert code == 0 and len([l for l in out.splitlines() if re.match(r"^\d", l)]) == 2

    code, _, err = call(
        capsys, "memorial", "experts", "--store", store, "--scenario", DATA / "eight_neurons.json", "--request-type", "nope"
    )
    assert code == 1 and "no records" in err


def test_memorial_corrupt_store_exits_one(tmp_path, capsys):
    store = tmp_path / "m.jsonl"
    store.write_text("garbage\n")
    code, _, err = call(capsys, "memorial", "stats", "--store", store)
    assert code == 1 and "line 1" in err
