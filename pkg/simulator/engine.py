"""Synthetic timelines with known action times."""
import logging
from typing import List, Tuple

import numpy as np

from core.schemas import GroundTruth, Scenario, TraceObservation, TruthEntry
from core.timeline import sort_traces
from simulator.latency import sample_latencies

logger = logging.getLogger(__name__)


def action_object_id(action_label: str, entry_index: int, trace_index: int) -> str:
    return f"/sim/{action_label}/{entry_index:04d}/trace{trace_index:04d}"


def noise_object_id(burst_index: int, trace_index: int) -> str:
    return f"/sim/noise/{burst_index:04d}/trace{trace_index:04d}"


def simulate(scenario: Scenario) -> Tuple[Tuple[TraceObservation, ...], GroundTruth]:
    """Generate the timeline and ground truth for ``scenario``.

    Each action emits ``trace_count`` modified-timestamps at true_time plus a
    floored latency; noise bursts emit unlabeled traces at their stated time.
    Actions draw from one generator seeded by ``scenario.seed``, in scenario
    order, so identical scenarios give identical output.
    """
    rng = np.random.default_rng(scenario.seed)
    traces: List[TraceObservation] = []
    entries: List[TruthEntry] = []

    for ai, action in enumerate(scenario.actions):
        latencies = sample_latencies(action.latency, action.trace_count, rng)
        ids = []
        for j, latency in enumerate(latencies):
            oid = action_object_id(action.action_label, ai, j)
            ids.append(oid)
            traces.append(TraceObservation(
                object_id=oid,
                timestamp=action.true_time + int(latency),
                timestamp_kind="modified",
                action_label=action.action_label,
            ))
        entries.append(TruthEntry(
            action_label=action.action_label,
            true_time=action.true_time,
            object_ids=tuple(ids),
        ))

    noise_ids = []
    for bi, burst in enumerate(scenario.noise):
        for j in range(burst.count):
            oid = noise_object_id(bi, j)
            noise_ids.append(oid)
            traces.append(TraceObservation(
                object_id=oid, timestamp=burst.timestamp, timestamp_kind="modified",
            ))

    logger.info(
        "[Simulate] seed=%d: %d actions, %d traces (%d noise)",
        scenario.seed, len(entries), len(traces), len(noise_ids),
    )
    return sort_traces(traces), GroundTruth(entries=tuple(entries), noise_object_ids=tuple(noise_ids))
