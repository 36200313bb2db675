"""Update-duration histograms."""
from typing import Sequence

import numpy as np

from core.errors import SampleError
from core.schemas import DurationSample, Histogram, HistogramBin


def build_histogram(samples: Sequence[DurationSample], bin_width: int = 10) -> Histogram:
    """Count durations into half-open bins [edge, edge + bin_width) anchored at 0.

    Bins run from 0 through the bin holding the longest duration; interior
    empty bins are kept, trailing ones do not exist.
    """
    if bin_width < 1:
        raise SampleError(f"bin_width must be >= 1, got {bin_width}")
    if not samples:
        return Histogram(bin_width=bin_width, bins=(), total=0)

    durations = np.asarray([s.duration for s in samples], dtype=float)
    index = np.floor_divide(durations, bin_width).astype(np.int64)
    counts = np.bincount(index)
    bins = tuple(
        HistogramBin(lower_edge=i * bin_width, count=int(c))
        for i, c in enumerate(counts)
    )
    return Histogram(bin_width=bin_width, bins=bins, total=int(counts.sum()))
