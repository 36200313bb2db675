"""Trace simulator: synthetic timelines with ground truth for evaluation."""
from simulator.engine import simulate
from simulator.evaluate import evaluate, predicted_containment
from simulator.latency import sample_latencies
from simulator.survey import simulate_runs

__all__ = ["simulate", "evaluate", "predicted_containment", "sample_latencies", "simulate_runs"]
