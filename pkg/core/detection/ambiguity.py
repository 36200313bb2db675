"""Cross-action ambiguity: overlapping time-spans of different actions."""
from typing import Dict, List, Sequence, Set, Tuple

from core.errors import SampleError
from core.schemas import ActionInstance, DetectionResult


def flag_ambiguities(results: Sequence[DetectionResult]) -> List[ActionInstance]:
    """Annotate instances whose spans overlap an instance of another action.

    Spans are closed intervals. Returns every instance, in result order, with
    ``ambiguous_with`` holding the labels of the overlapping actions.
    """
    labels = [r.profile_used.action_label for r in results]
    duplicates = sorted({label for label in labels if labels.count(label) > 1})
    if duplicates:
        raise SampleError(f"duplicate action labels across results: {duplicates}", labels=duplicates)

    flat: List[Tuple[int, ActionInstance]] = [
        (ri, inst) for ri, r in enumerate(results) for inst in r.instances
    ]
    extra: Dict[int, Set[str]] = {i: set(inst.ambiguous_with) for i, (_, inst) in enumerate(flat)}
    for i, (ri, a) in enumerate(flat):
        for j in range(i + 1, len(flat)):
            rj, b = flat[j]
            if ri != rj and a.time_span.overlaps(b.time_span):
                extra[i].add(b.action_label)
                extra[j].add(a.action_label)

    return [
        inst.model_copy(update={"ambiguous_with": tuple(sorted(extra[i]))})
        for i, (_, inst) in enumerate(flat)
    ]
