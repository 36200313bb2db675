"""Repeated-execution survey: the protocol used to estimate a threshold.

An action is executed ``run_count`` times at known times. Each run has one
update duration D drawn from the latency model; its traces land within
[0, D] after the start and the slowest lands exactly at D. Unrelated noise
can be scheduled at fixed offsets after each start (at least the noise gap,
two minutes by default).
"""
import logging
from typing import List, Sequence, Tuple

import numpy as np

from core.errors import SampleError
from core.schemas import GroundTruth, LatencyModel, TraceObservation, TruthEntry
from core.timeline import sort_traces
from simulator.engine import action_object_id, noise_object_id
from simulator.latency import sample_latencies

logger = logging.getLogger(__name__)

SURVEY_EPOCH = 1_262_304_000  # 2010-01-01T00:00:00Z

Run = Tuple[int, Tuple[TraceObservation, ...]]


def simulate_runs(
    action_label: str,
    latency: LatencyModel,
    run_count: int,
    traces_per_run: int,
    seed: int,
    *,
    start: int = SURVEY_EPOCH,
    run_spacing: int = 3600,
    noise_offsets: Sequence[int] = (),
    noise_gap: int = 120,
) -> Tuple[List[Run], GroundTruth]:
    """Return ``run_count`` runs of (action_start, observations) and their truth."""
    if run_count < 1 or traces_per_run < 1:
        raise SampleError("run_count and traces_per_run must be >= 1", labels=[action_label])
    if seed < 0:
        raise SampleError(f"seed must be >= 0, got {seed}", labels=[action_label])
    close = [o for o in noise_offsets if o < noise_gap]
    if close:
        raise SampleError(f"noise offsets {close} are closer than the {noise_gap} s noise gap", labels=[action_label])
    rng = np.random.default_rng(seed)
    runs: List[Run] = []
    entries: List[TruthEntry] = []
    noise_ids: List[str] = []

    for ri in range(run_count):
        run_start = start + ri * run_spacing
        duration = int(sample_latencies(latency, 1, rng)[0])
        offsets = [duration] + [int(x) for x in rng.integers(0, duration + 1, size=traces_per_run - 1)]
        traces = []
        ids = []
        for j, offset in enumerate(offsets):
            oid = action_object_id(action_label, ri, j)
            ids.append(oid)
            traces.append(TraceObservation(
                object_id=oid,
                timestamp=run_start + offset,
                action_label=action_label,
            ))
        for ni, offset in enumerate(noise_offsets):
            oid = noise_object_id(ri, ni)
            noise_ids.append(oid)
            traces.append(TraceObservation(object_id=oid, timestamp=run_start + int(offset)))
        runs.append((run_start, sort_traces(traces)))
        entries.append(TruthEntry(action_label=action_label, true_time=run_start, object_ids=tuple(ids)))

    logger.info("[Simulate] survey of %r: %d runs x %d traces, seed=%d",
                action_label, run_count, traces_per_run, seed)
    return runs, GroundTruth(entries=tuple(entries), noise_object_ids=tuple(noise_ids))
