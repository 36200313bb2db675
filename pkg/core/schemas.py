"""Domain schemas for timebound.

Every model is frozen: traces, profiles and detection results are value data
and can be shared between threads or processes without copying.
"""
import math
from typing import Annotated, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# 整秒 epoch（UTC），所有数据都以秒为单位
Timestamp = Annotated[int, Field(ge=0)]

TimestampKind = Literal["modified", "accessed", "changed", "created", "other"]
LatencyKind = Literal["normal_truncated_at_zero", "uniform", "constant"]


def ceil_threshold(mean: float, std_dev: float, sigma_multiplier: float) -> int:
    """max(0, ceil(mean + k·σ)) in whole seconds."""
    # 先舍到 1e-9，避免 60.000000000001 这类浮点噪声被 ceil 成 61
    return max(0, math.ceil(round(mean + sigma_multiplier * std_dev, 9)))


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True)


# ── timeline model ────────────────────────────────────────────────────────────


class TraceObservation(_Frozen):
    """One observed timestamp on one object."""
    object_id: str = Field(min_length=1)
    timestamp: Timestamp
    timestamp_kind: TimestampKind = "modified"
    action_label: Optional[str] = None
    category_label: Optional[str] = None  # carried, never interpreted


class DurationSample(_Frozen):
    """Seconds between an action's start and one of its trace updates."""
    duration: float = Field(ge=0, allow_inf_nan=False)
    action_label: str = Field(min_length=1)
    source_id: str = ""


class ActionProfile(_Frozen):
    """Normal model (μ, σ) of an action's update durations and its threshold Θ."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    action_label: str = Field(min_length=1)
    mean: float = Field(alias="mean_seconds", allow_inf_nan=False)
    std_dev: float = Field(alias="std_dev_seconds", ge=0, allow_inf_nan=False)
    sigma_multiplier: float = Field(default=2.0, gt=0, allow_inf_nan=False)
    threshold: int = Field(alias="threshold_seconds", ge=0)
    sample_count: int = Field(ge=1)
    # set only by refinement, when μ+kσ overshoots the bootstrap gate
    threshold_cap: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _threshold_matches_moments(self) -> "ActionProfile":
        expected = ceil_threshold(self.mean, self.std_dev, self.sigma_multiplier)
        if self.threshold_cap is not None:
            expected = min(expected, self.threshold_cap)
        if self.threshold != expected:
            raise ValueError(
                f"threshold {self.threshold} does not match moments "
                f"(mean={self.mean}, std_dev={self.std_dev}, k={self.sigma_multiplier}); "
                f"expected {expected}"
            )
        return self


class TimeSpan(_Frozen):
    """Closed interval [lower, upper] in which an action must have happened."""
    lower: Timestamp
    upper: Timestamp

    @model_validator(mode="after")
    def _ordered(self) -> "TimeSpan":
        if self.lower > self.upper:
            raise ValueError(f"lower {self.lower} > upper {self.upper}")
        return self

    def contains(self, t: int) -> bool:
        return self.lower <= t <= self.upper

    def overlaps(self, other: "TimeSpan") -> bool:
        # 闭区间：共享一个边界秒也算重叠
        return self.lower <= other.upper and other.lower <= self.upper


class TraceGroup(_Frozen):
    """Traces attributed to one action occurrence, sorted oldest to newest."""
    traces: Tuple[TraceObservation, ...] = Field(min_length=1)
    span_seconds: int = Field(ge=0)

    @model_validator(mode="after")
    def _sorted_and_span(self) -> "TraceGroup":
        stamps = [t.timestamp for t in self.traces]
        if any(a > b for a, b in zip(stamps, stamps[1:])):
            raise ValueError("traces must be sorted ascending by timestamp")
        if self.span_seconds != stamps[-1] - stamps[0]:
            raise ValueError(
                f"span_seconds {self.span_seconds} != {stamps[-1]} - {stamps[0]}"
            )
        return self

    @classmethod
    def from_sorted(cls, traces) -> "TraceGroup":
        traces = tuple(traces)
        return cls(traces=traces, span_seconds=traces[-1].timestamp - traces[0].timestamp)

    @property
    def oldest(self) -> int:
        return self.traces[0].timestamp

    @property
    def newest(self) -> int:
        return self.traces[-1].timestamp


class ActionInstance(_Frozen):
    """A detected occurrence of an action and the bound on its true time."""
    action_label: str = Field(min_length=1)
    group: TraceGroup
    time_span: TimeSpan
    ambiguous_with: Tuple[str, ...] = ()

    @field_validator("ambiguous_with")
    @classmethod
    def _canonical_labels(cls, labels: Tuple[str, ...]) -> Tuple[str, ...]:
        return tuple(sorted(set(labels)))

    @model_validator(mode="after")
    def _upper_is_oldest(self) -> "ActionInstance":
        if self.time_span.upper != self.group.oldest:
            raise ValueError("time_span.upper must equal the oldest grouped timestamp")
        return self


# ── threshold estimator ──────────────────────────────────────────────────────


class HistogramBin(_Frozen):
    lower_edge: int = Field(ge=0)
    count: int = Field(ge=0)


class Histogram(_Frozen):
    """Update-duration histogram with half-open bins [edge, edge + width)."""
    bin_width: int = Field(ge=1)
    bins: Tuple[HistogramBin, ...] = ()
    total: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _consistent(self) -> "Histogram":
        if sum(b.count for b in self.bins) != self.total:
            raise ValueError("bin counts do not sum to total")
        for i, b in enumerate(self.bins):
            if b.lower_edge != i * self.bin_width:
                raise ValueError(f"bin {i} has edge {b.lower_edge}, expected {i * self.bin_width}")
        if self.bins and self.bins[-1].count == 0:
            raise ValueError("trailing empty bins are not stored")
        return self


class RefinementConfig(_Frozen):
    """Bootstrap gate and pass count for threshold refinement."""
    initial_threshold: int = Field(default=120, ge=1)
    passes: int = Field(default=2, ge=1)
    noise_gap: int = Field(default=120, ge=1)


# ── instance detector ────────────────────────────────────────────────────────


class DetectionResult(_Frozen):
    """Instances found for one action profile over one timeline."""
    instances: Tuple[ActionInstance, ...] = ()
    unattributed: Tuple[TraceObservation, ...] = ()
    profile_used: ActionProfile

    @model_validator(mode="after")
    def _bounds_follow_profile(self) -> "DetectionResult":
        theta = self.profile_used.threshold
        for inst in self.instances:
            if inst.action_label != self.profile_used.action_label:
                raise ValueError(
                    f"instance label {inst.action_label!r} != profile "
                    f"{self.profile_used.action_label!r}"
                )
            if inst.time_span.lower != max(0, inst.group.newest - theta):
                raise ValueError("time_span.lower must equal newest timestamp - threshold")
        return self


# ── trace simulator ──────────────────────────────────────────────────────────


class LatencyModel(_Frozen):
    """Update-latency distribution. param_a/param_b mean μ/σ, lower/upper or value/unused."""
    kind: LatencyKind = "normal_truncated_at_zero"
    param_a: float = Field(allow_inf_nan=False)
    param_b: float = Field(default=0.0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _valid_parameters(self) -> "LatencyModel":
        if self.kind == "normal_truncated_at_zero" and self.param_b < 0:
            raise ValueError(f"sigma must be >= 0, got {self.param_b}")
        if self.kind == "uniform":
            if self.param_a < 0:
                raise ValueError(f"uniform lower bound must be >= 0, got {self.param_a}")
            if self.param_b < self.param_a:
                raise ValueError(f"uniform upper {self.param_b} < lower {self.param_a}")
        if self.kind == "constant" and self.param_a < 0:
            raise ValueError(f"constant latency must be >= 0, got {self.param_a}")
        return self


class ScenarioAction(_Frozen):
    action_label: str = Field(min_length=1)
    # bodyfiles write 0 for an absent timestamp
    true_time: int = Field(ge=1)
    trace_count: int = Field(ge=1)
    latency: LatencyModel


class NoiseBurst(_Frozen):
    timestamp: int = Field(ge=1)
    count: int = Field(ge=1)


class Scenario(_Frozen):
    """Simulator input: injected actions, explicit noise and the RNG seed."""
    actions: Tuple[ScenarioAction, ...] = ()
    noise: Tuple[NoiseBurst, ...] = ()
    seed: int = Field(default=0, ge=0)


class TruthEntry(_Frozen):
    action_label: str = Field(min_length=1)
    true_time: Timestamp
    object_ids: Tuple[str, ...] = ()

    @field_validator("object_ids")
    @classmethod
    def _sorted_ids(cls, ids: Tuple[str, ...]) -> Tuple[str, ...]:
        return tuple(sorted(ids))


class GroundTruth(_Frozen):
    """True action times and the object ids each one generated."""
    entries: Tuple[TruthEntry, ...] = ()
    noise_object_ids: Tuple[str, ...] = ()

    @field_validator("noise_object_ids")
    @classmethod
    def _sorted_noise(cls, ids: Tuple[str, ...]) -> Tuple[str, ...]:
        return tuple(sorted(ids))

    @model_validator(mode="after")
    def _ids_disjoint(self) -> "GroundTruth":
        seen = set(self.noise_object_ids)
        if len(seen) != len(self.noise_object_ids):
            raise ValueError("duplicate noise object id")
        for entry in self.entries:
            for oid in entry.object_ids:
                if oid in seen:
                    raise ValueError(f"object id {oid!r} belongs to more than one truth entry")
                seen.add(oid)
        return self

    def for_label(self, action_label: str) -> Tuple[TruthEntry, ...]:
        return tuple(e for e in self.entries if e.action_label == action_label)


class EvaluationReport(_Frozen):
    """Detection quality against simulator ground truth."""
    action_label: Optional[str] = None
    instance_count_true: int = Field(ge=0)
    instance_count_detected: int = Field(ge=0)
    containment_rate: float = Field(ge=0.0, le=1.0)
    merged_instances: int = Field(default=0, ge=0)
    split_instances: int = Field(default=0, ge=0)
    vacuous: bool = False


# ── timeline io ──────────────────────────────────────────────────────────────


class BodyfileRecord(_Frozen):
    """One mactime body line: MD5|name|inode|mode|UID|GID|size|atime|mtime|ctime|crtime."""
    md5: str = "0"
    name: str = Field(min_length=1)
    inode: str = "0"
    mode: str = ""
    uid: str = "0"
    gid: str = "0"
    size: str = "0"
    atime: int = Field(default=0, ge=-1)
    mtime: int = Field(default=0, ge=-1)
    ctime: int = Field(default=0, ge=-1)
    crtime: int = Field(default=0, ge=-1)

    def present_timestamps(self) -> Tuple[Tuple[TimestampKind, int], ...]:
        """(kind, epoch) pairs in a, m, c, b order, absent (0 / -1) skipped."""
        pairs = (
            ("accessed", self.atime),
            ("modified", self.mtime),
            ("changed", self.ctime),
            ("created", self.crtime),
        )
        return tuple((kind, value) for kind, value in pairs if value > 0)
