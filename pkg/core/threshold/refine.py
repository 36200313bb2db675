"""Two-pass threshold refinement over runs with known execution times.

Pass 1 associates traces with the action through a generous bootstrap gate
(120 s by default). Every later pass fits a profile from each run's update
duration, i.e. the latest trace that survived the gate, and tightens the gate
to the new threshold.
"""
import logging
from typing import List, Optional, Sequence, Tuple

from core.errors import SampleError
from core.schemas import (
    ActionProfile, DurationSample, GroundTruth, RefinementConfig, TraceObservation,
)
from core.threshold.estimate import fit_profile
from core.timeline import sort_traces, update_durations

logger = logging.getLogger(__name__)

Run = Tuple[int, Sequence[TraceObservation]]


def _gate(
    runs: List[Tuple[int, List[DurationSample]]],
    gate: int,
    pass_no: int,
) -> List[Tuple[int, List[DurationSample]]]:
    kept = []
    for run_index, durations in runs:
        retained = [d for d in durations if d.duration <= gate]
        if not retained:
            logger.warning(
                "[Refine] pass %d: run %d has no trace within %d s, dropped",
                pass_no, run_index, gate,
            )
            continue
        kept.append((run_index, retained))
    if not kept:
        raise SampleError(f"refinement pass {pass_no} retained no run within {gate} s")
    return kept


def _fit_run_maxima(
    runs: List[Tuple[int, List[DurationSample]]],
    sigma_multiplier: float,
    cap: int,
) -> ActionProfile:
    run_durations = [max(durations, key=lambda d: d.duration) for _, durations in runs]
    profile = fit_profile(run_durations, sigma_multiplier)
    if profile.threshold > cap:
        logger.info(
            "[Refine] fitted threshold %d s exceeds gate %d s, capping",
            profile.threshold, cap,
        )
        profile = ActionProfile(
            action_label=profile.action_label,
            mean=profile.mean,
            std_dev=profile.std_dev,
            sigma_multiplier=profile.sigma_multiplier,
            threshold=cap,
            sample_count=profile.sample_count,
            threshold_cap=cap,
        )
    return profile


def refine_profile(
    labeled_runs: Sequence[Run],
    config: Optional[RefinementConfig] = None,
    sigma_multiplier: float = 2.0,
    action_label: Optional[str] = None,
) -> ActionProfile:
    """Estimate an action profile from runs of (action_start, observations).

    ``action_label`` labels observations that carry none (bodyfile traces).
    Runs whose traces all fall outside the current gate are dropped with a
    warning; if every run drops, SampleError.
    """
    config = config or RefinementConfig()
    if not labeled_runs:
        raise SampleError("refinement needs at least one run")

    if action_label is None:
        action_label = next(
            (o.action_label for _, obs in labeled_runs for o in obs if o.action_label), None,
        )

    runs: List[Tuple[int, List[DurationSample]]] = []
    for run_index, (start, observations) in enumerate(labeled_runs):
        if not observations:
            raise SampleError(f"run {run_index} has no observations")
        runs.append((run_index, update_durations(
            observations, start, source_id=f"run{run_index:03d}", action_label=action_label,
        )))

    if config.initial_threshold > config.noise_gap:
        logger.warning(
            "[Refine] bootstrap gate %d s reaches past the noise gap %d s; noise may be attributed",
            config.initial_threshold, config.noise_gap,
        )
    gate = config.initial_threshold
    runs = _gate(runs, gate, pass_no=1)
    profile = None
    for pass_no in range(2, config.passes + 1):
        profile = _fit_run_maxima(runs, sigma_multiplier, config.initial_threshold)
        gate = profile.threshold
        logger.info(
            "[Refine] pass %d: mean=%.2f s std=%.2f s threshold=%d s over %d runs",
            pass_no, profile.mean, profile.std_dev, gate, len(runs),
        )
        runs = _gate(runs, gate, pass_no)
    if profile is None:
        profile = _fit_run_maxima(runs, sigma_multiplier, config.initial_threshold)
    return profile


def runs_from_truth(
    traces: Sequence[TraceObservation],
    truth: GroundTruth,
    action_label: str,
) -> List[Run]:
    """Split a timeline into runs at the known execution times of one action.

    Run i owns traces with start_i <= t < start_(i+1); the last run owns every
    later trace. Traces older than the first start belong to no run.
    """
    starts = sorted(e.true_time for e in truth.for_label(action_label))
    if not starts:
        raise SampleError(f"truth has no execution of {action_label!r}", labels=(action_label,))
    ordered = sort_traces(traces)
    runs: List[Run] = []
    for i, start in enumerate(starts):
        end = starts[i + 1] if i + 1 < len(starts) else None
        owned = [
            t for t in ordered
            if t.timestamp >= start and (end is None or t.timestamp < end)
        ]
        if not owned:
            logger.warning("[Refine] execution at %d has no traces, skipped", start)
            continue
        runs.append((start, owned))
    return runs

