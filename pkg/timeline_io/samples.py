"""Duration-sample CSV: ``action,source,duration_seconds``."""
import csv
import io
import math
from typing import Iterable, List, Optional

from core.errors import ParseError
from core.schemas import DurationSample

HEADER = ("action", "source", "duration_seconds")


def parse_samples(stream, source: Optional[str] = None) -> List[DurationSample]:
    """Read one DurationSample per row; the header line is mandatory."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != HEADER:
        raise ParseError(1, f"header must be {','.join(HEADER)!r}, got {header!r}", source)

    samples: List[DurationSample] = []
    for row in reader:
        line_number = reader.line_num
        if not row or not any(cell.strip() for cell in row):
            continue
        if len(row) != len(HEADER):
            raise ParseError(line_number, f"expected 3 fields, got {len(row)}", source)
        action, source_id, raw = (cell.strip() for cell in row)
        if not action:
            raise ParseError(line_number, "empty action label", source)
        try:
            duration = float(raw)
        except ValueError:
            raise ParseError(line_number, f"duration is not a number: {raw!r}", source) from None
        if not math.isfinite(duration) or duration < 0:
            raise ParseError(line_number, f"duration must be a non-negative number, got {raw!r}", source)
        samples.append(DurationSample(duration=duration, action_label=action, source_id=source_id))
    return samples


def write_samples(samples: Iterable[DurationSample]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for s in samples:
        writer.writerow((s.action_label, s.source_id, repr(s.duration)))
    return buf.getvalue()
