"""Trace simulator and evaluation against ground truth."""
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import numpy as np
import pytest
from pydantic import ValidationError

from core.detection import detect_instances
from core.errors import ArtifactMismatchError, SampleError
from core.schemas import (
    DetectionResult, GroundTruth, LatencyModel, NoiseBurst, Scenario, ScenarioAction,
)
from simulator import evaluate, predicted_containment, sample_latencies, simulate, simulate_runs
from helpers import ie8_latency, ie8_profile


def _action(true_time, trace_count, latency, label="ie8"):
    return ScenarioAction(action_label=label, true_time=true_time, trace_count=trace_count, latency=latency)


def _uniform(lo, hi):
    return LatencyModel(kind="uniform", param_a=lo, param_b=hi)


# ── latency models ───────────────────────────────────────────────────────────


def test_latency_model_validation():
    with pytest.raises(ValidationError):
        LatencyModel(kind="normal_truncated_at_zero", param_a=10, param_b=-1)
    with pytest.raises(ValidationError):
        _uniform(10, 5)
    with pytest.raises(ValidationError):
        LatencyModel(kind="constant", param_a=-3)


def test_scenario_rejects_negative_seed_and_zero_times():
    with pytest.raises(ValidationError):
        Scenario(seed=-1)
    with pytest.raises(ValidationError):
        _action(0, 1, LatencyModel(kind="constant", param_a=0))
    with pytest.raises(ValidationError):
        NoiseBurst(timestamp=0, count=1)
    assert _action(1, 1, LatencyModel(kind="constant", param_a=0)).true_time == 1


def test_sample_latencies_floor_and_clamp():
    rng = np.random.default_rng(0)
    values = sample_latencies(LatencyModel(kind="normal_truncated_at_zero", param_a=0, param_b=50), 500, rng)
    assert values.dtype == np.int64
    assert values.min() >= 0
    assert (values == 0).sum() > 100
    constant = sample_latencies(LatencyModel(kind="constant", param_a=5.9), 3, rng)
    assert constant.tolist() == [5, 5, 5]


# ── simulate ─────────────────────────────────────────────────────────────────


def test_simulate_constant_latency():
    timeline, truth = simulate(Scenario(actions=(_action(1000, 3, LatencyModel(kind="constant", param_a=5)),)))
    assert [t.timestamp for t in timeline] == [1005, 1005, 1005]
    assert all(t.timestamp_kind == "modified" and t.action_label == "ie8" for t in timeline)
    assert len(truth.entries) == 1
    assert truth.entries[0].true_time == 1000
    assert set(truth.entries[0].object_ids) == {t.object_id for t in timeline}


def test_simulate_degenerate_uniform():
    timeline, _ = simulate(Scenario(actions=(_action(1000, 4, _uniform(0, 0)),)))
    assert [t.timestamp for t in timeline] == [1000] * 4


def test_simulate_normal_mean():
    timeline, _ = simulate(Scenario(actions=(_action(10_000, 1000, ie8_latency()),), seed=3))
    latencies = [t.timestamp - 10_000 for t in timeline]
    assert min(latencies) >= 0
    assert abs(np.mean(latencies) - 27.4) <= 2.0


def test_simulate_noise_and_order():
    scenario = Scenario(
        actions=(_action(5000, 2, _uniform(0, 30)), _action(1000, 2, _uniform(0, 30), label="ff3")),
        noise=(NoiseBurst(timestamp=3000, count=3),),
        seed=9,
    )
    timeline, truth = simulate(scenario)
    stamps = [t.timestamp for t in timeline]
    assert stamps == sorted(stamps)
    assert len(timeline) == 7
    noise = [t for t in timeline if t.action_label is None]
    assert [t.timestamp for t in noise] == [3000] * 3
    assert set(truth.noise_object_ids) == {t.object_id for t in noise}
    for entry in truth.entries:
        own = [t for t in timeline if t.object_id in entry.object_ids]
        assert all(t.timestamp >= entry.true_time for t in own)


def test_simulate_is_deterministic():
    scenario = Scenario(actions=tuple(_action(1000 + 500 * i, 5, ie8_latency()) for i in range(10)), seed=42)
    assert simulate(scenario) == simulate(scenario)
    other = simulate(scenario.model_copy(update={"seed": 43}))
    assert other != simulate(scenario)


def test_simulate_runs_shape():
    runs, truth = simulate_runs("ie8", ie8_latency(), 10, 5, seed=2, noise_offsets=(150,))
    assert len(runs) == 10
    assert len(truth.entries) == 10
    assert len(truth.noise_object_ids) == 10
    for (start, observations), entry in zip(runs, truth.entries):
        assert entry.true_time == start
        labeled = [o for o in observations if o.action_label == "ie8"]
        durations = [o.timestamp - start for o in labeled]
        assert len(labeled) == 5
        # the slowest trace marks the run's update duration
        assert all(0 <= d <= max(durations) for d in durations)
    with pytest.raises(SampleError):
        simulate_runs("ie8", ie8_latency(), 0, 5, seed=1)
    with pytest.raises(SampleError):
        simulate_runs("ie8", ie8_latency(), 3, 5, seed=1, noise_offsets=(60,))
    with pytest.raises(SampleError) as exc:
        simulate_runs("ie8", ie8_latency(), 3, 5, seed=-1)
    assert exc.value.labels == ("ie8",)


# ── evaluate ─────────────────────────────────────────────────────────────────


def test_evaluate_perfect_single_action():
    timeline, truth = simulate(Scenario(actions=(_action(1000, 5, _uniform(0, 40)),)))
    report = evaluate(detect_instances(timeline, ie8_profile()), truth)
    assert (report.instance_count_true, report.instance_count_detected) == (1, 1)
    assert report.containment_rate == 1.0
    assert report.merged_instances == 0
    assert report.split_instances == 0
    assert not report.vacuous


def test_evaluate_merged_actions():
    scenario = Scenario(actions=(_action(1000, 5, _uniform(0, 40)), _action(1010, 5, _uniform(0, 40))))
    timeline, truth = simulate(scenario)
    report = evaluate(detect_instances(timeline, ie8_profile()), truth)
    assert report.instance_count_true == 2
    assert report.instance_count_detected == 1
    assert report.merged_instances == 1


def test_evaluate_split_action():
    # one straggler 200 s late opens a second instance
    timeline, truth = simulate(Scenario(actions=(_action(1000, 3, LatencyModel(kind="constant", param_a=5)),)))
    late = timeline[0].model_copy(update={"timestamp": 1200})
    moved = [late] + list(timeline[1:])
    report = evaluate(detect_instances(moved, ie8_profile()), truth)
    assert report.split_instances == 1
    assert report.instance_count_detected == 2
    assert report.containment_rate == 1.0


def test_evaluate_noise_only_is_vacuous():
    timeline, truth = simulate(Scenario(noise=(NoiseBurst(timestamp=500, count=2), NoiseBurst(timestamp=5000, count=1))))
    report = evaluate(detect_instances(timeline, ie8_profile()), truth)
    assert report.instance_count_true == 0
    assert report.instance_count_detected == 2
    assert report.containment_rate == 1.0
    assert report.vacuous


def test_evaluate_rejects_foreign_artifacts():
    timeline, truth = simulate(Scenario(actions=(_action(1000, 2, _uniform(0, 10)),)))
    detected = detect_instances(timeline, ie8_profile())
    with pytest.raises(ArtifactMismatchError):
        evaluate(detected, GroundTruth())
    empty = DetectionResult(profile_used=ie8_profile())
    with pytest.raises(ArtifactMismatchError):
        evaluate(empty, truth)


def test_pipeline_closure():
    actions = tuple(_action(10_000 + 600 * i, 4, _uniform(0, 60)) for i in range(20))
    timeline, truth = simulate(Scenario(actions=actions, seed=8))
    report = evaluate(detect_instances(timeline, ie8_profile()), truth)
    assert report.instance_count_detected == report.instance_count_true == 20
    assert report.merged_instances == 0
    assert report.split_instances == 0
    assert report.containment_rate == 1.0


# ── predicted containment ────────────────────────────────────────────────────


def test_predicted_containment_values():
    assert predicted_containment(ie8_latency(), 61) == pytest.approx(0.9805, abs=1e-3)
    assert predicted_containment(ie8_latency(), 61, 5) < predicted_containment(ie8_latency(), 61)
    assert predicted_containment(_uniform(0, 100), 49) == pytest.approx(0.5)
    assert predicted_containment(LatencyModel(kind="constant", param_a=61.5), 61) == 1.0
    assert predicted_containment(LatencyModel(kind="constant", param_a=62), 61) == 0.0
