"""Action-instance detection over a post-mortem timeline."""
import logging
from typing import Iterable, List, Sequence

from core.detection.ambiguity import flag_ambiguities
from core.detection.grouping import bound_instance, group_traces
from core.errors import SampleError
from core.schemas import ActionInstance, ActionProfile, DetectionResult, TraceObservation

logger = logging.getLogger(__name__)


def detect_instances(
    traces: Iterable[TraceObservation],
    profile: ActionProfile,
) -> DetectionResult:
    """Group traces with the profile's threshold and bound every group.

    Unlabeled traces and traces labeled with the profile's action are grouped;
    traces labeled with another action go to ``unattributed``.
    """
    label = profile.action_label
    candidates: List[TraceObservation] = []
    unattributed: List[TraceObservation] = []
    for t in traces:
        if t.action_label is None or t.action_label == label:
            candidates.append(t)
        else:
            unattributed.append(t)

    instances = []
    for group in group_traces(candidates, profile.threshold):
        instances.append(ActionInstance(
            action_label=label,
            group=group,
            time_span=bound_instance(group, profile.threshold),
        ))
    logger.info(
        "[Detect] %s: %d traces -> %d instances (threshold %d s, %d unattributed)",
        label, len(candidates), len(instances), profile.threshold, len(unattributed),
    )
    return DetectionResult(
        instances=tuple(instances),
        unattributed=tuple(unattributed),
        profile_used=profile,
    )


def detect_all(
    traces: Sequence[TraceObservation],
    profiles: Sequence[ActionProfile],
) -> List[DetectionResult]:
    """Detect every profile over the same timeline and flag cross-action overlap."""
    labels = [p.action_label for p in profiles]
    if len(set(labels)) != len(labels):
        raise SampleError(f"duplicate profile labels in {labels}", labels=labels)
    traces = tuple(traces)
    results = [detect_instances(traces, p) for p in profiles]
    flagged = iter(flag_ambiguities(results))
    # flag_ambiguities 按 results 顺序平铺返回，这里按原结构装回去
    return [
        r.model_copy(update={"instances": tuple(next(flagged) for _ in r.instances)})
        for r in results
    ]
