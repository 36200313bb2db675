"""Canonical JSON reports.

Every document is an envelope ``{"report_type": ..., "data": ...}`` dumped
with sorted keys, two-space indent and a trailing newline, so the same input
always gives the same bytes. Integer timestamps get a ``<key>_utc`` ISO-8601
companion for human readers; readers drop the companions again.
"""
import json
from datetime import datetime, timezone
from typing import Any, List, Optional, Sequence, Tuple, Type, Union

from pydantic import BaseModel

from core.errors import ParseError
from core.schemas import (
    ActionProfile, DetectionResult, EvaluationReport, GroundTruth, Histogram, Scenario,
)

TIMESTAMP_KEYS = frozenset({"timestamp", "lower", "upper", "true_time"})
UTC_SUFFIX = "_utc"

REPORT_TYPES = {
    ActionProfile: "profile",
    DetectionResult: "detection",
    EvaluationReport: "evaluation",
    GroundTruth: "truth",
    Scenario: "scenario",
    Histogram: "histogram",
}
_MODELS = {name: model for model, name in REPORT_TYPES.items()}

Reportable = Union[BaseModel, Sequence[BaseModel]]


def iso_utc(epoch: int) -> str:
    return datetime.fromtimestamp(epoch, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _annotate(node: Any) -> Any:
    if isinstance(node, list):
        return [_annotate(v) for v in node]
    if not isinstance(node, dict):
        return node
    out = {k: _annotate(v) for k, v in node.items()}
    for key, value in node.items():
        if key in TIMESTAMP_KEYS and isinstance(value, int) and not isinstance(value, bool):
            try:
                out[key + UTC_SUFFIX] = iso_utc(value)
            except (OverflowError, ValueError, OSError):
                pass  # 超出 datetime 范围的时间戳只保留整数
    return out


def _strip(node: Any) -> Any:
    if isinstance(node, list):
        return [_strip(v) for v in node]
    if not isinstance(node, dict):
        return node
    return {
        k: _strip(v) for k, v in node.items()
        if not (k.endswith(UTC_SUFFIX) and k[: -len(UTC_SUFFIX)] in TIMESTAMP_KEYS)
    }


def write_report(result: Reportable) -> str:
    """Serialize a model, or a list of models of one type, canonically."""
    items = list(result) if isinstance(result, (list, tuple)) else [result]
    model_types = {type(m) for m in items}
    if len(model_types) > 1:
        raise TypeError(f"cannot mix report types {sorted(t.__name__ for t in model_types)}")
    model_type = model_types.pop() if model_types else None
    if model_type is None:
        raise TypeError("an empty list has no report type; wrap it in a model")
    if model_type not in REPORT_TYPES:
        raise TypeError(f"{model_type.__name__} is not a report type")

    dumped = [m.model_dump(mode="json", by_alias=True) for m in items]
    data = dumped if isinstance(result, (list, tuple)) else dumped[0]
    document = {"report_type": REPORT_TYPES[model_type], "data": _annotate(data)}
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_report(text: str, source: Optional[str] = None) -> Tuple[str, Any]:
    """Return (report_type, validated model or list of models)."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.lineno, f"invalid JSON: {e.msg}", source) from e
    if not isinstance(document, dict) or "report_type" not in document or "data" not in document:
        raise ParseError(1, "not a timebound report (missing report_type/data)", source)
    report_type = document["report_type"]
    model = _MODELS.get(report_type)
    if model is None:
        raise ParseError(1, f"unknown report_type {report_type!r}", source)
    data = _strip(document["data"])
    if isinstance(data, list):
        return report_type, [model.model_validate(d) for d in data]
    return report_type, model.model_validate(data)


def _read_as(text: str, expected: Type[BaseModel], source: Optional[str] = None) -> Any:
    report_type, payload = read_report(text, source)
    if report_type != REPORT_TYPES[expected]:
        raise ParseError(1, f"expected a {REPORT_TYPES[expected]} report, got {report_type!r}", source)
    return payload


def _as_list(payload: Any) -> list:
    return payload if isinstance(payload, list) else [payload]


def read_profiles(text: str, source: Optional[str] = None) -> List[ActionProfile]:
    return _as_list(_read_as(text, ActionProfile, source))


def read_detection(text: str, source: Optional[str] = None) -> List[DetectionResult]:
    return _as_list(_read_as(text, DetectionResult, source))


def read_evaluation(text: str, source: Optional[str] = None) -> List[EvaluationReport]:
    return _as_list(_read_as(text, EvaluationReport, source))


def read_truth(text: str, source: Optional[str] = None) -> GroundTruth:
    return _read_as(text, GroundTruth, source)


def read_scenario(text: str, source: Optional[str] = None) -> Scenario:
    """Accepts a scenario report or a bare scenario object (hand-written files)."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.lineno, f"invalid JSON: {e.msg}", source) from e
    if isinstance(document, dict) and "report_type" in document:
        return _read_as(text, Scenario, source)
    return Scenario.model_validate(_strip(document))
