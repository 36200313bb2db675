"""Action-instance detection: grouping, time-bounding, ambiguity flags."""
from core.detection.ambiguity import flag_ambiguities
from core.detection.detector import detect_all, detect_instances
from core.detection.grouping import bound_instance, group_traces

__all__ = [
    "group_traces",
    "bound_instance",
    "detect_instances",
    "detect_all",
    "flag_ambiguities",
]
