"""Score a detection result against simulator ground truth."""
import logging
import math
from collections import Counter
from typing import Dict, List

from scipy.stats import norm

from core.errors import ArtifactMismatchError
from core.schemas import DetectionResult, EvaluationReport, GroundTruth, LatencyModel

logger = logging.getLogger(__name__)


def evaluate(detected: DetectionResult, truth: GroundTruth) -> EvaluationReport:
    """Match every true action to the detected instance holding most of its traces.

    - containment_rate: matched actions whose instance span contains the true
      time, over all true actions (1.0 and ``vacuous`` when there are none)
    - merged_instances: detected instances matched by two or more actions
    - split_instances: actions whose traces ended up in more than one instance
    Only truth entries with the profile's label are scored.
    """
    label = detected.profile_used.action_label
    entries = truth.for_label(label)

    known = set(truth.noise_object_ids)
    for e in truth.entries:
        known.update(e.object_ids)
    seen = {t.object_id for t in detected.unattributed}
    for inst in detected.instances:
        seen.update(t.object_id for t in inst.group.traces)
    unknown = seen - known
    if unknown:
        raise ArtifactMismatchError(
            f"{len(unknown)} detected object ids are not in the truth report, "
            f"e.g. {sorted(unknown)[0]!r}"
        )
    missing = {oid for e in entries for oid in e.object_ids} - seen
    if missing:
        raise ArtifactMismatchError(
            f"{len(missing)} truth object ids of {label!r} are missing from the detection, "
            f"e.g. {sorted(missing)[0]!r}"
        )

    entry_of: Dict[str, int] = {oid: ei for ei, e in enumerate(entries) for oid in e.object_ids}
    hits: List[Counter] = [Counter() for _ in entries]
    for k, inst in enumerate(detected.instances):
        for t in inst.group.traces:
            ei = entry_of.get(t.object_id)
            if ei is not None:
                hits[ei][k] += 1

    contained = 0
    split = 0
    matched_by: Counter = Counter()
    for entry, counts in zip(entries, hits):
        if len(counts) > 1:
            split += 1
        if not counts:
            continue
        # 票数相同取更早的实例
        best = min(counts, key=lambda k: (-counts[k], k))
        matched_by[best] += 1
        if detected.instances[best].time_span.contains(entry.true_time):
            contained += 1

    vacuous = not entries
    if vacuous:
        logger.warning("[Evaluate] no true %r actions; containment_rate is vacuously 1.0", label)
    return EvaluationReport(
        action_label=label,
        instance_count_true=len(entries),
        instance_count_detected=len(detected.instances),
        containment_rate=1.0 if vacuous else contained / len(entries),
        merged_instances=sum(1 for n in matched_by.values() if n > 1),
        split_instances=split,
        vacuous=vacuous,
    )


def _within(model: LatencyModel, threshold: int) -> float:
    # floor(max(0, X)) <= Θ  <=>  X < Θ + 1
    limit = threshold + 1
    if model.kind == "normal_truncated_at_zero":
        if model.param_b == 0:
            return 1.0 if model.param_a < limit else 0.0
        return float(norm.cdf(limit, loc=model.param_a, scale=model.param_b))
    if model.kind == "uniform":
        if model.param_b == model.param_a:
            return 1.0 if model.param_a < limit else 0.0
        return min(1.0, max(0.0, (limit - model.param_a) / (model.param_b - model.param_a)))
    return 1.0 if math.floor(model.param_a) <= threshold else 0.0


def predicted_containment(
    latency: LatencyModel,
    threshold: int,
    trace_count: int = 1,
) -> float:
    """P(all ``trace_count`` floored latencies <= threshold).

    Exact containment rate for single-trace instances, a lower bound for
    larger ones.
    """
    return _within(latency, threshold) ** trace_count
