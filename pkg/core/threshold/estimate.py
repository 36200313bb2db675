"""Normal-model fit of update durations and the k·σ update threshold."""
import math
import statistics
from collections import defaultdict
from typing import Dict, List, Sequence

from core.errors import SampleError
from core.schemas import ActionProfile, DurationSample, ceil_threshold


def compute_threshold(mean: float, std_dev: float, sigma_multiplier: float = 2.0) -> int:
    """Update threshold Θ = max(0, ceil(mean + k·σ)) in whole seconds.

    One-sided: durations are never negative, so only the upper tail matters.
    """
    if not (math.isfinite(mean) and math.isfinite(std_dev)):
        raise SampleError(f"mean and std_dev must be finite (got {mean}, {std_dev})")
    if std_dev < 0:
        raise SampleError(f"std_dev must be >= 0, got {std_dev}")
    if not sigma_multiplier > 0:
        raise SampleError(f"sigma_multiplier must be > 0, got {sigma_multiplier}")
    return ceil_threshold(mean, std_dev, sigma_multiplier)


def _single_label(samples: Sequence[DurationSample]) -> str:
    if not samples:
        raise SampleError("cannot fit a profile from an empty sample set")
    label = samples[0].action_label
    for s in samples[1:]:
        if s.action_label != label:
            raise SampleError(
                f"mixed action labels {label!r} and {s.action_label!r}",
                labels=(label, s.action_label),
            )
    return label


def fit_profile(
    samples: Sequence[DurationSample],
    sigma_multiplier: float = 2.0,
) -> ActionProfile:
    """Fit mean and sample standard deviation (n-1) of one action's durations.

    statistics.fmean / stdev are exactly rounded, so the result does not depend
    on sample order.
    """
    label = _single_label(samples)
    durations = [s.duration for s in samples]
    mean = statistics.fmean(durations)
    std_dev = statistics.stdev(durations) if len(durations) > 1 else 0.0
    return ActionProfile(
        action_label=label,
        mean=mean,
        std_dev=std_dev,
        sigma_multiplier=sigma_multiplier,
        threshold=compute_threshold(mean, std_dev, sigma_multiplier),
        sample_count=len(durations),
    )


def fit_profiles(
    samples: Sequence[DurationSample],
    sigma_multiplier: float = 2.0,
) -> List[ActionProfile]:
    """One profile per action label, sorted by label."""
    by_label: Dict[str, List[DurationSample]] = defaultdict(list)
    for s in samples:
        by_label[s.action_label].append(s)
    return [fit_profile(by_label[label], sigma_multiplier) for label in sorted(by_label)]


def merge_profiles(profiles: Sequence[ActionProfile]) -> ActionProfile:
    """Pool per-machine profiles of one action into a single profile.

    Uses the combined-sample moments, so merging the fits of disjoint sample
    sets gives the fit of their union:
        m  = Σ nᵢ mᵢ / N
        s² = (Σ (nᵢ-1) sᵢ² + Σ nᵢ (mᵢ-m)²) / (N-1)
    """
    if not profiles:
        raise SampleError("cannot merge an empty profile list")
    label = profiles[0].action_label
    for p in profiles[1:]:
        if p.action_label != label:
            raise SampleError(
                f"mixed action labels {label!r} and {p.action_label!r}",
                labels=(label, p.action_label),
            )
    multipliers = {p.sigma_multiplier for p in profiles}
    if len(multipliers) != 1:
        raise SampleError(f"profiles of {label!r} use different sigma multipliers {sorted(multipliers)}")
    sigma_multiplier = multipliers.pop()

    total = sum(p.sample_count for p in profiles)
    mean = math.fsum(p.sample_count * p.mean for p in profiles) / total
    if total > 1:
        within = math.fsum((p.sample_count - 1) * p.std_dev ** 2 for p in profiles)
        between = math.fsum(p.sample_count * (p.mean - mean) ** 2 for p in profiles)
        std_dev = math.sqrt((within + between) / (total - 1))
    else:
        std_dev = 0.0
    return ActionProfile(
        action_label=label,
        mean=mean,
        std_dev=std_dev,
        sigma_multiplier=sigma_multiplier,
        threshold=compute_threshold(mean, std_dev, sigma_multiplier),
        sample_count=total,
    )


def coverage(samples: Sequence[DurationSample], profile: ActionProfile) -> float:
    """Fraction of sample durations at or below the profile's threshold."""
    if not samples:
        return 1.0
    return sum(1 for s in samples if s.duration <= profile.threshold) / len(samples)
