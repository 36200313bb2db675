"""Shared fixtures: IE8-like survey data and small model builders."""
import numpy as np

from core.schemas import ActionProfile, DurationSample, LatencyModel, TraceObservation

IE8_MEAN = 27.4
IE8_STD = 16.76
IE8_THRESHOLD = 61

# 25 hand-picked durations with the right-skewed shape of a browser survey;
# rescaled below to the published mean and sample standard deviation.
_IE8_SHAPE = [
    4, 8, 9, 11, 13, 15, 17, 19, 21, 22, 24, 26, 27,
    29, 31, 33, 35, 37, 39, 42, 45, 49, 54, 61, 70,
]


def ie8_durations():
    """25 durations with mean 27.4 s and sample std 16.76 s (about 2.2 .. 67 s)."""
    base = np.asarray(_IE8_SHAPE, dtype=float)
    z = (base - base.mean()) / base.std(ddof=1)
    return [float(v) for v in IE8_MEAN + IE8_STD * z]


def ie8_samples():
    return [
        DurationSample(duration=d, action_label="ie8", source_id=f"host{i + 1:02d}")
        for i, d in enumerate(ie8_durations())
    ]


def ie8_samples_csv():
    rows = ["action,source,duration_seconds"]
    rows += [f"ie8,{s.source_id},{s.duration!r}" for s in ie8_samples()]
    return "\n".join(rows) + "\n"


def ie8_profile():
    return ActionProfile(
        action_label="ie8", mean=IE8_MEAN, std_dev=IE8_STD, threshold=IE8_THRESHOLD, sample_count=25,
    )


def ff3_profile():
    return ActionProfile(action_label="ff3", mean=20.0, std_dev=15.0, threshold=50, sample_count=25)


def ie8_latency():
    return LatencyModel(kind="normal_truncated_at_zero", param_a=IE8_MEAN, param_b=IE8_STD)


def traces_at(timestamps, label=None, prefix="/obj"):
    """One modified-trace per timestamp, with unique object ids."""
    return [
        TraceObservation(object_id=f"{prefix}{i:03d}", timestamp=t, action_label=label)
        for i, t in enumerate(timestamps)
    ]
