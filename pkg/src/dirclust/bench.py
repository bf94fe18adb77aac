"""Repeated seeded experiments and plot-ready mean/std curves.

An experiment runs each enabled strategy `repetitions` times with seeds
base_seed, base_seed+1, ... and aggregates the per-request cumulative valid
counts into pointwise mean and population-std curves, plus summary metrics:

  * requests_to_full_discovery: per repetition, the request count at which the
    last valid path was found,
  * auc: normalized area under the mean curve, sum(mean)/(n*V), in [0, 1],
  * improvement: 1 - mean_requests(clustered)/mean_requests(bruteforce),
    reported both at full discovery and at 95% discovery since "requests
    saved" can reasonably mean either.

Requests are the only cost measure; wall time is never reported.
"""
from __future__ import annotations

import datetime as _dt
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .cluster import ClusterModel
from .engine import (
    BRUTEFORCE,
    CLUSTERED,
    RunLog,
    Target,
    run_bruteforce,
    run_clustered,
    save_run_log,
)
from .errors import DataFormatError, TransportError
from .wordlist import Wordlist

DEFAULT_REPETITIONS = 30


@dataclass
class ExperimentPlan:
    target: Target
    wordlist: Wordlist
    model: ClusterModel | None = None
    repetitions: int = DEFAULT_REPETITIONS
    base_seed: int = 0
    strategies: tuple[str, ...] = (BRUTEFORCE, CLUSTERED)
    miss_threshold: float = math.inf
    output_dir: Path | None = None

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if not self.strategies:
            raise ValueError("at least one strategy required")
        unknown = [s for s in self.strategies if s not in (BRUTEFORCE, CLUSTERED)]
        if unknown:
            raise ValueError(f"unknown strategy {unknown[0]!r}")
        if CLUSTERED in self.strategies and self.model is None:
            raise DataFormatError("clustered strategy requires a cluster model")


@dataclass
class StrategyCurves:
    mean_curve: np.ndarray
    std_curve: np.ndarray
    requests_to_full_discovery: list[int]
    requests_to_95pct: list[int]
    auc: float

    def mean_requests_to_full(self) -> float:
        return float(np.mean(self.requests_to_full_discovery))

    def mean_requests_to_95pct(self) -> float:
        return float(np.mean(self.requests_to_95pct))


@dataclass
class BenchmarkReport:
    n: int
    total_valid: int
    repetitions: int
    curves: dict[str, StrategyCurves] = field(default_factory=dict)

    @property
    def improvement(self) -> float | None:
        return self._improvement(lambda c: c.mean_requests_to_full())

    @property
    def improvement_95(self) -> float | None:
        return self._improvement(lambda c: c.mean_requests_to_95pct())

    def _improvement(self, measure) -> float | None:
        if BRUTEFORCE not in self.curves or CLUSTERED not in self.curves:
            return None
        brute = measure(self.curves[BRUTEFORCE])
        if brute == 0:
            return None
        return 1.0 - measure(self.curves[CLUSTERED]) / brute


def _requests_to_reach(cum: np.ndarray, threshold: int) -> int:
    # first 1-based request index whose cumulative count reaches threshold
    return int(np.argmax(cum >= threshold)) + 1


def compute_curves(logs: dict[str, list[RunLog]]) -> BenchmarkReport:
    """Aggregate run logs into a report; pure function of the logs."""
    if not logs:
        raise ValueError("no logs to aggregate")
    n = None
    total_valid = None
    for strategy, strategy_logs in logs.items():
        if not strategy_logs:
            raise DataFormatError(f"strategy {strategy!r} has no logs")
        for log in strategy_logs:
            if n is None:
                n = log.requests_made()
                total_valid = log.total_valid()
            if log.requests_made() != n:
                raise DataFormatError(
                    f"mismatched log lengths: expected {n}, "
                    f"got {log.requests_made()} for {strategy}"
                )
            if log.total_valid() != total_valid:
                raise DataFormatError(
                    f"logs disagree on the total valid count: {total_valid} vs "
                    f"{log.total_valid()} for {strategy}"
                )
    report = BenchmarkReport(n=n, total_valid=total_valid, repetitions=0)
    for strategy, strategy_logs in logs.items():
        matrix = np.stack([log.cumulative_valid for log in strategy_logs])
        mean_curve = matrix.mean(axis=0)
        std_curve = matrix.std(axis=0)  # population std
        full = [_requests_to_reach(row, total_valid) for row in matrix]
        near = [_requests_to_reach(row, math.ceil(0.95 * total_valid)) for row in matrix]
        auc = float(mean_curve.sum() / (n * total_valid)) if total_valid > 0 else 0.0
        report.curves[strategy] = StrategyCurves(
            mean_curve=mean_curve, std_curve=std_curve,
            requests_to_full_discovery=full, requests_to_95pct=near, auc=auc,
        )
        report.repetitions = max(report.repetitions, len(strategy_logs))
    return report


def run_experiment(plan: ExperimentPlan) -> BenchmarkReport:
    """Run every (strategy, repetition) pair, persist artifacts, aggregate."""
    out = plan.output_dir
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    logs: dict[str, list[RunLog]] = {s: [] for s in plan.strategies}
    for r in range(plan.repetitions):
        seed = plan.base_seed + r
        for strategy in plan.strategies:
            try:
                if strategy == BRUTEFORCE:
                    log = run_bruteforce(plan.target, plan.wordlist, seed)
                else:
                    log = run_clustered(
                        plan.target, plan.wordlist, plan.model, seed, plan.miss_threshold
                    )
            except TransportError as exc:
                if out is not None and exc.partial_log is not None:
                    save_run_log(exc.partial_log, out / f"run_{strategy}_seed{seed}_partial.csv")
                raise
            logs[strategy].append(log)
            if out is not None:
                save_run_log(log, out / f"run_{strategy}_seed{seed}.csv")
    report = compute_curves(logs)
    if out is not None:
        emit_plot_data(report, out / "plot.tsv")
        save_report(report, out / "report.tsv")
    return report


PLOT_HEADER = "index\tstrategy\tmean\tstd"


def plot_data_lines(report: BenchmarkReport) -> list[str]:
    lines = [PLOT_HEADER]
    for strategy, curves in report.curves.items():
        for i in range(report.n):
            lines.append(
                f"{i}\t{strategy}\t{curves.mean_curve[i]:.6f}\t{curves.std_curve[i]:.6f}"
            )
    return lines


def emit_plot_data(report: BenchmarkReport, path: str | Path) -> None:
    Path(path).write_text("".join(line + "\n" for line in plot_data_lines(report)), encoding="utf-8")


def save_report(report: BenchmarkReport, path: str | Path) -> None:
    """Plot TSV prefixed with a '#' summary block of the key metrics."""
    lines = [
        f"# n={report.n}",
        f"# total_valid={report.total_valid}",
        f"# repetitions={report.repetitions}",
    ]
    for strategy, curves in report.curves.items():
        lines.append(
            f"# {strategy}: mean_requests_to_full={curves.mean_requests_to_full():.6f} "
            f"mean_requests_to_95pct={curves.mean_requests_to_95pct():.6f} auc={curves.auc:.6f}"
        )
    if report.improvement is not None:
        lines.append(f"# improvement_full={report.improvement:.6f}")
        lines.append(f"# improvement_95pct={report.improvement_95:.6f}")
    lines.extend(plot_data_lines(report))
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def parse_plot_data(path: str | Path) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Read back an emitted plot/report file into per-strategy (mean, std) arrays."""
    means: dict[str, list[float]] = {}
    stds: dict[str, list[float]] = {}
    text = Path(path).read_text(encoding="utf-8")
    seen_header = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line or line.startswith("#"):
            continue
        if line == PLOT_HEADER:
            seen_header = True
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise DataFormatError(f"{path}:{lineno}: expected 4 tab-separated fields")
        _, strategy, mean, std = parts
        means.setdefault(strategy, []).append(float(mean))
        stds.setdefault(strategy, []).append(float(std))
    if not seen_header:
        raise DataFormatError(f"{path}: missing plot header line")
    return {s: (np.array(means[s]), np.array(stds[s])) for s in means}


def experiment_dir(root: str | Path, target: Target, base_seed: int) -> Path:
    """Conventional artifact directory: target slug + timestamp + base seed."""
    slug = re.sub(r"[^A-Za-z0-9._-]+", "-", target.describe()).strip("-")[:60]
    stamp = _dt.datetime.now().strftime("%Y%m%d-%H%M%S")
    return Path(root) / f"{slug}_{stamp}_seed{base_seed}"
