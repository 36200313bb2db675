"""Update-latency sampling for the trace simulator."""
import numpy as np

from core.schemas import LatencyModel


def sample_latencies(model: LatencyModel, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` whole-second latencies (int64, never negative).

    The normal kind clamps negative draws to 0 instead of resampling, so the
    number of RNG draws per call is fixed and runs stay reproducible.
    """
    if model.kind == "normal_truncated_at_zero":
        raw = rng.normal(model.param_a, model.param_b, size=count)
    elif model.kind == "uniform":
        raw = rng.uniform(model.param_a, model.param_b, size=count)
    else:
        raw = np.full(count, model.param_a, dtype=float)
    return np.floor(np.clip(raw, 0.0, None)).astype(np.int64)
