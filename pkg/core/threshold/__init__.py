"""Threshold estimation: normal fit, k·σ threshold, histograms, refinement."""
from core.threshold.estimate import (
    compute_threshold, coverage, fit_profile, fit_profiles, merge_profiles,
)
from core.threshold.histogram import build_histogram
from core.threshold.refine import refine_profile, runs_from_truth

__all__ = [
    "compute_threshold",
    "coverage",
    "fit_profile",
    "fit_profiles",
    "merge_profiles",
    "build_histogram",
    "refine_profile",
    "runs_from_truth",
]
