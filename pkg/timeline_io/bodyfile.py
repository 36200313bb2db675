"""Sleuth Kit body format (mactime v3, 11 '|'-separated fields).

    MD5|name|inode|mode_as_string|UID|GID|size|atime|mtime|ctime|crtime

Timestamps are epoch seconds; 0 and -1 mean absent. Parsing is strict: a
malformed line raises ParseError with its line number, nothing is skipped
silently.
"""
import math
import re
from typing import Iterable, List, Optional, TextIO, Union

from pydantic import ValidationError

from core.errors import ParseError, TimeboundError
from core.schemas import BodyfileRecord, TraceObservation
from core.timeline import sort_traces

FIELD_NAMES = (
    "md5", "name", "inode", "mode", "uid", "gid", "size",
    "atime", "mtime", "ctime", "crtime",
)
TIME_FIELDS = FIELD_NAMES[7:]
_KIND_TO_FIELD = {"accessed": "atime", "modified": "mtime", "changed": "ctime", "created": "crtime"}
_EPOCH = re.compile(r"^-?\d+(\.\d+)?$")
_ESCAPED = re.compile(r"%([0-9A-Fa-f]{2})")

Source = Union[str, TextIO, Iterable[str]]


def _lines(stream: Source) -> Iterable[str]:
    if isinstance(stream, str):
        return stream.splitlines()
    return stream


def decode_name(field: str) -> str:
    """Undo mactime-style %XX escapes."""
    return _ESCAPED.sub(lambda m: chr(int(m.group(1), 16)), field)


def encode_name(name: str) -> str:
    return (name.replace("%", "%25").replace("|", "%7C")
            .replace("\r", "%0D").replace("\n", "%0A"))


def _epoch(value: str, field: str, line_number: int, source: Optional[str]) -> int:
    value = value.strip()
    if not _EPOCH.match(value):
        raise ParseError(line_number, f"{field} is not an epoch timestamp: {value!r}", source)
    # 亚秒时间戳在入口处向下取整
    return math.floor(float(value)) if "." in value else int(value)


def parse_record(line: str, line_number: int, source: Optional[str] = None) -> BodyfileRecord:
    fields = line.split("|")
    if len(fields) != len(FIELD_NAMES):
        raise ParseError(
            line_number, f"expected {len(FIELD_NAMES)} '|'-separated fields, got {len(fields)}", source,
        )
    values = dict(zip(FIELD_NAMES, fields))
    values["name"] = decode_name(values["name"])
    for field in TIME_FIELDS:
        values[field] = _epoch(values[field], field, line_number, source)
    try:
        return BodyfileRecord(**values)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise ParseError(line_number, f"{where}: {first['msg']}", source) from e


def parse_bodyfile(stream: Source, source: Optional[str] = None) -> List[TraceObservation]:
    """One TraceObservation per present MACB timestamp, in file order.

    Blank lines and lines starting with '#' are skipped. object_id is the
    decoded name field; action labels are left unset.
    """
    observations: List[TraceObservation] = []
    for line_number, raw in enumerate(_lines(stream), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        record = parse_record(line, line_number, source)
        for kind, ts in record.present_timestamps():
            observations.append(TraceObservation(
                object_id=record.name, timestamp=ts, timestamp_kind=kind,
            ))
    return observations


def to_record(trace: TraceObservation) -> BodyfileRecord:
    field = _KIND_TO_FIELD.get(trace.timestamp_kind)
    if field is None:
        raise TimeboundError(f"{trace.object_id!r}: kind {trace.timestamp_kind!r} has no bodyfile column")
    if trace.timestamp == 0:
        raise TimeboundError(f"{trace.object_id!r}: timestamp 0 reads back as absent")
    return BodyfileRecord(name=trace.object_id, mode="r/rrwxrwxrwx", **{field: trace.timestamp})


def format_record(record: BodyfileRecord) -> str:
    values = record.model_dump()
    values["name"] = encode_name(record.name)
    return "|".join(str(values[f]) for f in FIELD_NAMES)


def write_bodyfile(traces: Iterable[TraceObservation]) -> str:
    """One body line per observation, in timeline order."""
    return "".join(format_record(to_record(t)) + "\n" for t in sort_traces(traces))
