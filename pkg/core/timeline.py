"""Elementary timeline arithmetic: canonical ordering and update durations."""
from typing import Iterable, List, Optional, Tuple

from core.errors import ClockSkewError, SampleError
from core.schemas import DurationSample, TraceObservation


def trace_sort_key(trace: TraceObservation) -> Tuple[int, str, str]:
    """Oldest first; equal timestamps fall back to object_id, then kind."""
    return (trace.timestamp, trace.object_id, trace.timestamp_kind)


def sort_traces(traces: Iterable[TraceObservation]) -> Tuple[TraceObservation, ...]:
    """Return traces in canonical timeline order."""
    return tuple(sorted(traces, key=trace_sort_key))


def update_durations(
    observations: Iterable[TraceObservation],
    action_start: int,
    source_id: str = "",
    action_label: Optional[str] = None,
) -> List[DurationSample]:
    """Seconds from ``action_start`` to each observation, in input order.

    Raises ClockSkewError for any observation older than the action start:
    a trace cannot be updated before its action ran. Unlabeled observations
    (post-mortem traces) take ``action_label`` instead.
    """
    samples: List[DurationSample] = []
    for obs in observations:
        if obs.timestamp < action_start:
            raise ClockSkewError(obs.object_id, obs.timestamp, action_start)
        label = obs.action_label or action_label
        if not label:
            raise SampleError(
                f"observation {obs.object_id!r} has no action_label; durations need one"
            )
        samples.append(DurationSample(
            duration=obs.timestamp - action_start,
            action_label=label,
            source_id=source_id,
        ))
    return samples
