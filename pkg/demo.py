"""
Demo script showing the timebound pipeline in-process.

This script demonstrates:
1. Fitting an update threshold from a survey of update durations
2. Simulating a timeline with two browser sessions and some noise
3. Grouping the timeline into action instances and bounding their times
4. Scoring the detection against the simulator's ground truth
5. Recovering the threshold from repeated runs (two-pass refinement)

Run: python demo.py
"""
import numpy as np

from core.config import get_settings
from core.detection import detect_all
from core.logging_setup import configure_logging
from core.schemas import DurationSample, LatencyModel, NoiseBurst, Scenario, ScenarioAction
from core.threshold import build_histogram, fit_profile, refine_profile
from simulator import evaluate, predicted_containment, simulate, simulate_runs
from timeline_io import write_histogram_csv, write_report
from timeline_io.reports import iso_utc

EPOCH = 1_262_304_000


def section(title: str) -> None:
    print()
    print("=" * 70)
    print(title)
    print("-" * 70)


def demo_workflow() -> None:
    settings = get_settings()
    configure_logging(settings.log_level)
    latency = LatencyModel(kind="normal_truncated_at_zero", param_a=27.4, param_b=16.76)

    section("📋 Step 1: Fit the update threshold from a 25-machine survey")
    rng = np.random.default_rng(2010)
    durations = np.floor(np.clip(rng.normal(27.4, 16.76, size=25), 0, None))
    samples = [
        DurationSample(duration=float(d), action_label="ie8", source_id=f"host{i + 1:02d}")
        for i, d in enumerate(durations)
    ]
    profile = fit_profile(samples, settings.sigma_multiplier)
    print(f"mean={profile.mean:.2f} s  std={profile.std_dev:.2f} s  threshold={profile.threshold} s")
    print(write_histogram_csv(build_histogram(samples, settings.bin_width)))

    section("🧪 Step 2: Simulate two sessions 5 minutes apart plus noise")
    scenario = Scenario(
        actions=(
            ScenarioAction(action_label="ie8", true_time=EPOCH, trace_count=6, latency=latency),
            ScenarioAction(action_label="ie8", true_time=EPOCH + 300, trace_count=6, latency=latency),
        ),
        noise=(NoiseBurst(timestamp=EPOCH + 900, count=3),),
        seed=7,
    )
    timeline, truth = simulate(scenario)
    print(f"{len(timeline)} timestamps, {len(truth.entries)} true sessions")

    section("🔍 Step 3: Group and time-bound")
    result = detect_all(timeline, [profile])[0]
    for inst in result.instances:
        span = inst.time_span
        print(f"  {len(inst.group.traces)} traces -> session between "
              f"{iso_utc(span.lower)} and {iso_utc(span.upper)}")

    section("📊 Step 4: Evaluate against ground truth")
    print(write_report(evaluate(result, truth)), end="")
    print(f"predicted single-trace containment: {predicted_containment(latency, profile.threshold):.3f}")

    section("🔁 Step 5: Two-pass refinement over 25 runs")
    runs, _ = simulate_runs("ie8", latency, 25, 5, seed=3, noise_offsets=(150,))
    refined = refine_profile(runs, sigma_multiplier=settings.sigma_multiplier)
    print(f"refined threshold={refined.threshold} s over {refined.sample_count} runs")


if __name__ == "__main__":
    demo_workflow()
