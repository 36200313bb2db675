"""Timeline and sample ingest, report and histogram output."""
from timeline_io.bodyfile import parse_bodyfile, write_bodyfile
from timeline_io.histogram_csv import write_histogram_csv
from timeline_io.reports import (
    read_detection, read_evaluation, read_profiles, read_report, read_scenario, read_truth,
    write_report,
)
from timeline_io.samples import parse_samples, write_samples

__all__ = [
    "parse_bodyfile",
    "write_bodyfile",
    "parse_samples",
    "write_samples",
    "write_report",
    "read_report",
    "read_profiles",
    "read_detection",
    "read_evaluation",
    "read_truth",
    "read_scenario",
    "write_histogram_csv",
]
