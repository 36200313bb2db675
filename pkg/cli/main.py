"""timebound command line.

    timebound <fit|detect|simulate|evaluate|histogram|refine|merge> [options] INPUTS...

Reports go to --out (default stdout); diagnostics go to stderr. Exit code 0
means a complete report was written, 1 a domain/I-O error, 2 a usage error.
"""
import argparse
import logging
import sys
from collections import defaultdict
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from core.config import Settings, get_settings
from core.detection import detect_all
from core.errors import SampleError, TimeboundError
from core.logging_setup import configure_logging
from core.schemas import ActionProfile, RefinementConfig
from core.threshold import (
    build_histogram, coverage, fit_profiles, merge_profiles, refine_profile, runs_from_truth,
)
from simulator import evaluate, simulate
from timeline_io import (
    parse_bodyfile, parse_samples, read_detection, read_profiles, read_scenario, read_truth,
    write_bodyfile, write_histogram_csv, write_report,
)

logger = logging.getLogger(__name__)

Subcommand = Literal["fit", "detect", "simulate", "evaluate", "histogram", "refine", "merge"]

# 子命令 → 位置参数（名称, 个数）
_INPUTS: Dict[str, Tuple[Tuple[str, object, str], ...]] = {
    "fit": (("samples", None, "duration samples CSV (action,source,duration_seconds)"),),
    "detect": (("bodyfile", None, "timeline in Sleuth Kit body format"),
               ("profiles", None, "profile report written by 'fit', 'refine' or 'merge'")),
    "simulate": (("scenario", None, "scenario JSON"),),
    "evaluate": (("detection", None, "detection report written by 'detect'"),
                 ("truth", None, "truth report written by 'simulate'")),
    "histogram": (("samples", None, "duration samples CSV"),),
    "refine": (("bodyfile", None, "timeline in Sleuth Kit body format"),
               ("truth", None, "truth report with the known execution times")),
    "merge": (("reports", "+", "profile reports to pool per action"),),
}


class CliConfig(BaseModel):
    """Resolved invocation: flags override settings, settings override defaults."""
    model_config = ConfigDict(frozen=True)

    subcommand: Subcommand
    inputs: Tuple[str, ...]
    out: Optional[str] = None
    truth_out: Optional[str] = None
    plot: Optional[str] = None
    action: Optional[str] = None
    sigma_multiplier: float = Field(default=2.0, gt=0)
    bin_width: int = Field(default=10, ge=1)
    initial_threshold: int = Field(default=120, ge=1)
    passes: int = Field(default=2, ge=1)
    noise_gap: int = Field(default=120, ge=1)
    seed: Optional[int] = Field(default=None, ge=0)
    log_level: str = "WARNING"

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace, settings: Settings) -> "CliConfig":
        inputs: List[str] = []
        for name, nargs, _ in _INPUTS[ns.subcommand]:
            value = getattr(ns, name)
            inputs.extend(value if nargs == "+" else [value])

        def pick(flag, default):
            return default if flag is None else flag

        return cls(
            subcommand=ns.subcommand,
            inputs=tuple(inputs),
            out=ns.out,
            truth_out=getattr(ns, "truth_out", None),
            plot=getattr(ns, "plot", None),
            action=getattr(ns, "action", None),
            sigma_multiplier=pick(ns.sigma_multiplier, settings.sigma_multiplier),
            bin_width=pick(ns.bin_width, settings.bin_width),
            initial_threshold=pick(ns.initial_threshold, settings.initial_threshold),
            passes=pick(ns.passes, settings.refinement_passes),
            noise_gap=settings.noise_gap,
            seed=ns.seed,
            log_level=pick(ns.log_level, settings.log_level),
        )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sigma-multiplier", type=float, help="k in Θ = ceil(μ + kσ) (default 2)")
    common.add_argument("--bin-width", type=int, help="histogram bin width in seconds (default 10)")
    common.add_argument("--initial-threshold", type=int, help="refinement bootstrap gate in seconds (default 120)")
    common.add_argument("--passes", type=int, help="refinement passes (default 2)")
    common.add_argument("--seed", type=int, help="simulator seed (>= 0), overrides the scenario's")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(
        prog="timebound",
        description="Estimate timestamp update thresholds and bound action-instance times.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    helps = {
        "fit": "fit a normal profile and threshold per action from duration samples",
        "detect": "group a timeline into action instances and bound their times",
        "simulate": "generate a synthetic bodyfile timeline plus its ground truth (action and noise times >= 1)",
        "evaluate": "score a detection report against a truth report",
        "histogram": "bin duration samples into a plot-ready CSV",
        "refine": "two-pass threshold refinement from a timeline and known execution times",
        "merge": "pool profiles of the same action from several machines",
    }
    for name, inputs in _INPUTS.items():
        p = sub.add_parser(name, parents=[common], help=helps[name])
        for arg, nargs, arg_help in inputs:
            p.add_argument(arg, nargs=nargs, help=arg_help)
        if name == "simulate":
            p.add_argument("--truth-out", help="truth report path (default: <out>.truth.json)")
        if name == "histogram":
            p.add_argument("--plot", help="also render the histogram as PNG")
            p.add_argument("--action", help="only bin samples of this action")
    return parser


# ── I/O helpers ──────────────────────────────────────────────────────────────


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    logger.info("[CLI] wrote %s", path)


# ── subcommands ──────────────────────────────────────────────────────────────


def run_fit(cfg: CliConfig) -> int:
    path = cfg.inputs[0]
    samples = parse_samples(_read(path).splitlines(), source=path)
    profiles = fit_profiles(samples, cfg.sigma_multiplier)
    if not profiles:
        raise SampleError(f"{path}: no samples")
    for p in profiles:
        own = [s for s in samples if s.action_label == p.action_label]
        logger.info(
            "[CLI] %s: n=%d mean=%.2f s std=%.2f s threshold=%d s covers %.1f%%",
            p.action_label, p.sample_count, p.mean, p.std_dev, p.threshold, 100 * coverage(own, p),
        )
    _emit(write_report(profiles), cfg.out)
    return 0


def run_detect(cfg: CliConfig) -> int:
    body_path, profile_path = cfg.inputs
    traces = parse_bodyfile(_read(body_path).splitlines(), source=body_path)
    profiles = read_profiles(_read(profile_path), source=profile_path)
    results = detect_all(traces, profiles)
    _emit(write_report(results), cfg.out)
    return 0


def run_simulate(cfg: CliConfig) -> int:
    path = cfg.inputs[0]
    scenario = read_scenario(_read(path), source=path)
    if cfg.seed is not None:
        scenario = scenario.model_copy(update={"seed": cfg.seed})
    timeline, truth = simulate(scenario)
    body = write_bodyfile(timeline)
    truth_doc = write_report(truth)

    truth_path = cfg.truth_out or (f"{cfg.out}.truth.json" if cfg.out else None)
    _emit(body, cfg.out)
    if truth_path is None:
        logger.warning("[CLI] no --out/--truth-out given, truth report not written")
    else:
        _emit(truth_doc, truth_path)
    return 0


def run_evaluate(cfg: CliConfig) -> int:
    detection_path, truth_path = cfg.inputs
    results = read_detection(_read(detection_path), source=detection_path)
    truth = read_truth(_read(truth_path), source=truth_path)
    reports = [evaluate(r, truth) for r in results]
    _emit(write_report(reports), cfg.out)
    return 0


def run_histogram(cfg: CliConfig) -> int:
    path = cfg.inputs[0]
    samples = parse_samples(_read(path).splitlines(), source=path)
    if cfg.action is not None:
        samples = [s for s in samples if s.action_label == cfg.action]
    labels = sorted({s.action_label for s in samples})
    if len(labels) > 1:
        raise SampleError(f"{path} mixes actions {labels}; choose one with --action", labels=labels)
    histogram = build_histogram(samples, cfg.bin_width)
    _emit(write_histogram_csv(histogram), cfg.out)
    if cfg.plot:
        from timeline_io.plotting import plot_histogram

        title = f"{labels[0]} update durations" if labels else "update durations"
        plot_histogram(histogram, cfg.plot, title=title)
        logger.info("[CLI] wrote %s", cfg.plot)
    return 0


def run_refine(cfg: CliConfig) -> int:
    body_path, truth_path = cfg.inputs
    traces = parse_bodyfile(_read(body_path).splitlines(), source=body_path)
    truth = read_truth(_read(truth_path), source=truth_path)
    config = RefinementConfig(
        initial_threshold=cfg.initial_threshold, passes=cfg.passes, noise_gap=cfg.noise_gap,
    )
    labels = sorted({e.action_label for e in truth.entries})
    if not labels:
        raise SampleError(f"{truth_path}: truth report has no executions")
    profiles = []
    for label in labels:
        runs = runs_from_truth(traces, truth, label)
        if not runs:
            raise SampleError(f"no traces follow any execution of {label!r}", labels=(label,))
        profiles.append(refine_profile(runs, config, cfg.sigma_multiplier, action_label=label))
    _emit(write_report(profiles), cfg.out)
    return 0


def run_merge(cfg: CliConfig) -> int:
    by_label: Dict[str, List[ActionProfile]] = defaultdict(list)
    for path in cfg.inputs:
        for p in read_profiles(_read(path), source=path):
            by_label[p.action_label].append(p)
    merged = [merge_profiles(by_label[label]) for label in sorted(by_label)]
    _emit(write_report(merged), cfg.out)
    return 0


COMMANDS = {
    "fit": run_fit,
    "detect": run_detect,
    "simulate": run_simulate,
    "evaluate": run_evaluate,
    "histogram": run_histogram,
    "refine": run_refine,
    "merge": run_merge,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    settings = get_settings()
    try:
        cfg = CliConfig.from_namespace(ns, settings)
    except ValidationError as e:
        parser.error(str(e))
    configure_logging(cfg.log_level)
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except OSError as e:
        logger.error("[CLI] %s: %s", e.filename or cfg.subcommand, e.strerror or e)
    except (TimeboundError, ValidationError) as e:
        logger.error("[CLI] %s failed: %s", cfg.subcommand, e)
    except UnicodeDecodeError as e:
        logger.error("[CLI] input is not UTF-8: %s", e)
    return 1


if __name__ == "__main__":
    sys.exit(main())
