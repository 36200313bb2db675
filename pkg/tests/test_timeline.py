"""Timeline model, schemas, settings."""
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import pytest
from pydantic import ValidationError

from core.config import get_settings
from core.errors import ClockSkewError, ParseError, SampleError
from core.schemas import (
    ActionInstance, ActionProfile, DurationSample, GroundTruth, Histogram, HistogramBin,
    TimeSpan, TraceGroup, TraceObservation, TruthEntry,
)
from core.timeline import sort_traces, update_durations
from helpers import traces_at


def test_imports():
    """Every package imports without side effects."""
    import cli.main  # noqa: F401
    import core.detection  # noqa: F401
    import core.threshold  # noqa: F401
    import simulator  # noqa: F401
    import timeline_io  # noqa: F401


# ── timeline ─────────────────────────────────────────────────────────────────


def test_update_durations():
    obs = traces_at([1010, 1000, 1061], label="ie8")
    samples = update_durations(obs, 1000, source_id="host01")
    assert [s.duration for s in samples] == [10, 0, 61]
    assert all(s.action_label == "ie8" and s.source_id == "host01" for s in samples)


def test_update_durations_clock_skew():
    with pytest.raises(ClockSkewError) as exc:
        update_durations(traces_at([999]), 1000, action_label="ie8")
    assert exc.value.object_id == "/obj000"
    assert exc.value.timestamp == 999


def test_update_durations_label_fallback():
    samples = update_durations(traces_at([1005]), 1000, action_label="ff3")
    assert samples[0].action_label == "ff3"
    with pytest.raises(SampleError):
        update_durations(traces_at([1005]), 1000)


def test_sort_traces_is_total():
    a = TraceObservation(object_id="/b", timestamp=5, timestamp_kind="modified")
    b = TraceObservation(object_id="/a", timestamp=5, timestamp_kind="modified")
    c = TraceObservation(object_id="/a", timestamp=5, timestamp_kind="accessed")
    d = TraceObservation(object_id="/z", timestamp=1)
    assert sort_traces([a, b, c, d]) == (d, c, b, a)


# ── schemas ──────────────────────────────────────────────────────────────────


def test_trace_observation_rejects_negative_time():
    with pytest.raises(ValidationError):
        TraceObservation(object_id="/a", timestamp=-1)
    with pytest.raises(ValidationError):
        TraceObservation(object_id="", timestamp=1)


def test_duration_sample_rejects_bad_values():
    with pytest.raises(ValidationError):
        DurationSample(duration=-0.5, action_label="ie8")
    with pytest.raises(ValidationError):
        DurationSample(duration=float("inf"), action_label="ie8")


def test_profile_threshold_must_match_moments():
    p = ActionProfile(action_label="ie8", mean_seconds=27.4, std_dev_seconds=16.76, threshold_seconds=61, sample_count=25)
    assert p.threshold == 61
    with pytest.raises(ValidationError):
        ActionProfile(action_label="ie8", mean=27.4, std_dev=16.76, threshold=60, sample_count=25)
    with pytest.raises(ValidationError):
        ActionProfile(action_label="ie8", mean=27.4, std_dev=16.76, threshold=61, sample_count=0)


def test_models_are_frozen():
    p = ActionProfile(action_label="x", mean=1, std_dev=0, threshold=1, sample_count=1)
    with pytest.raises(ValidationError):
        p.mean = 2


def test_time_span():
    span = TimeSpan(lower=69, upper=100)
    assert span.contains(69) and span.contains(100) and not span.contains(101)
    assert span.overlaps(TimeSpan(lower=100, upper=140))
    assert not span.overlaps(TimeSpan(lower=101, upper=140))
    with pytest.raises(ValidationError):
        TimeSpan(lower=5, upper=4)


def test_trace_group_invariants():
    g = TraceGroup.from_sorted(traces_at([10, 20, 25]))
    assert (g.oldest, g.newest, g.span_seconds) == (10, 25, 15)
    with pytest.raises(ValidationError):
        TraceGroup(traces=tuple(traces_at([20, 10])), span_seconds=10)
    with pytest.raises(ValidationError):
        TraceGroup(traces=tuple(traces_at([10, 20])), span_seconds=5)
    with pytest.raises(ValidationError):
        TraceGroup(traces=(), span_seconds=0)


def test_action_instance_upper_is_oldest():
    g = TraceGroup.from_sorted(traces_at([100, 130]))
    inst = ActionInstance(action_label="ie8", group=g, time_span=TimeSpan(lower=69, upper=100),
                          ambiguous_with=("ff3", "chrome", "ff3"))
    assert inst.ambiguous_with == ("chrome", "ff3")
    with pytest.raises(ValidationError):
        ActionInstance(action_label="ie8", group=g, time_span=TimeSpan(lower=69, upper=99))


def test_histogram_invariants():
    with pytest.raises(ValidationError):
        Histogram(bin_width=10, bins=(HistogramBin(lower_edge=0, count=1),), total=2)
    with pytest.raises(ValidationError):
        Histogram(bin_width=10, bins=(HistogramBin(lower_edge=10, count=1),), total=1)
    with pytest.raises(ValidationError):
        Histogram(bin_width=10, bins=(HistogramBin(lower_edge=0, count=1), HistogramBin(lower_edge=10, count=0)), total=1)


def test_ground_truth_ids_disjoint():
    with pytest.raises(ValidationError):
        GroundTruth(entries=(TruthEntry(action_label="a", true_time=1, object_ids=("/x",)),),
                    noise_object_ids=("/x",))
    truth = GroundTruth(entries=(TruthEntry(action_label="a", true_time=1, object_ids=("/y", "/x")),))
    assert truth.entries[0].object_ids == ("/x", "/y")
    assert truth.for_label("b") == ()


def test_parse_error_names_line():
    err = ParseError(7, "bad field", source="timeline.body")
    assert str(err) == "timeline.body:line 7: bad field"
    assert err.line_number == 7


# ── settings ─────────────────────────────────────────────────────────────────


def test_settings_defaults(monkeypatch):
    for name in ("SIGMA_MULTIPLIER", "BIN_WIDTH", "INITIAL_THRESHOLD", "REFINEMENT_PASSES"):
        monkeypatch.delenv(f"TIMEBOUND_{name}", raising=False)
    s = get_settings()
    assert (s.sigma_multiplier, s.bin_width, s.initial_threshold, s.refinement_passes) == (2.0, 10, 120, 2)
    assert get_settings() is s


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("TIMEBOUND_SIGMA_MULTIPLIER", "3")
    monkeypatch.setenv("TIMEBOUND_BIN_WIDTH", "5")
    s = get_settings()
    assert s.sigma_multiplier == 3.0
    assert s.bin_width == 5
