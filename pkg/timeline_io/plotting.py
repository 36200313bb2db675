"""PNG rendering of update-duration histograms."""
import math
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from core.schemas import Histogram  # noqa: E402


def plot_histogram(histogram: Histogram, path: str, title: str = "", threshold: Optional[int] = None) -> None:
    """Bar chart of the histogram; an optional dashed line marks the threshold."""
    golden_ratio = (math.sqrt(5) - 1.0) / 2.0
    width = 8
    fig, ax = plt.subplots(figsize=(width, width * golden_ratio))
    try:
        edges = [b.lower_edge for b in histogram.bins]
        counts = [b.count for b in histogram.bins]
        ax.bar(edges, counts, width=histogram.bin_width, align="edge", edgecolor="black", color="#7a9cc6")
        if threshold is not None:
            ax.axvline(threshold, linestyle="--", color="#c0392b", label=f"threshold {threshold} s")
            ax.legend()
        ax.set_xlabel("update duration (s)")
        ax.set_ylabel("occurrences")
        if title:
            ax.set_title(title)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)
