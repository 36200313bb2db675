"""Plot-ready histogram CSV: ``bin_lower_seconds,count``."""
import csv
import io

from core.schemas import Histogram

HEADER = ("bin_lower_seconds", "count")


def write_histogram_csv(histogram: Histogram) -> str:
    """Header plus one row per bin, zero-count interior bins included."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for b in histogram.bins:
        writer.writerow((b.lower_edge, b.count))
    return buf.getvalue()
