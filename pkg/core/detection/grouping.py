"""Span-rule grouping of timeline traces and time-bounding of each group."""
from typing import Iterable, List

from core.errors import GroupingError
from core.schemas import TimeSpan, TraceGroup, TraceObservation
from core.timeline import sort_traces


def group_traces(traces: Iterable[TraceObservation], threshold: int) -> List[TraceGroup]:
    """Greedy left-to-right grouping of sorted traces.

    A trace joins the current group iff it is at most ``threshold`` seconds
    newer than the group's oldest trace; otherwise it opens a new group. The
    rule bounds the whole span of a group, not the gap between neighbours.
    """
    if threshold < 0:
        raise GroupingError(f"threshold must be >= 0, got {threshold}")
    groups: List[TraceGroup] = []
    current: List[TraceObservation] = []
    for trace in sort_traces(traces):
        if current and trace.timestamp - current[0].timestamp > threshold:
            groups.append(TraceGroup.from_sorted(current))
            current = []
        current.append(trace)
    if current:
        groups.append(TraceGroup.from_sorted(current))
    return groups


def bound_instance(group: TraceGroup, threshold: int) -> TimeSpan:
    """Time-span of the action behind ``group``: (t2 - Θ) <= τ <= t1.

    t1 is the oldest and t2 the newest grouped timestamp; the lower bound is
    clamped at the epoch.
    """
    if group.span_seconds > threshold:
        raise GroupingError(
            f"group spans {group.span_seconds} s, more than threshold {threshold} s"
        )
    return TimeSpan(lower=max(0, group.newest - threshold), upper=group.oldest)
