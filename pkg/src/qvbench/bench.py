"""Benchmark driver: width sweeps with per-trial execution-only timing,
trial schedules, time limits, capacity skips, and scaling analysis."""

import math
import os
import time
from dataclasses import dataclass, field

import numpy as np

from .circuit import NoiseConfig, count_gates, execute, generate_qv_circuit, inject_pauli_noise
from .errors import CapacityError, InsufficientDataError
from .heavy_output import heavy_set, hop_in_set, qv_decision, sample_measurements, sampled_hop
from .sampling import RngStream, derive_seed
from .state import default_memory_budget, probabilities, state_bytes

DEFAULT_TIME_LIMIT_SECONDS = 43_200.0  # 12 hours

_NOISE_STREAM = 1
_MEASURE_STREAM = 2


@dataclass(frozen=True)
class SweepConfig:
    min_width: int
    max_width: int
    trials_per_width: int = 100
    shots: int = 0
    master_seed: int = 1
    threads: int | None = None
    fusion: bool = False
    time_limit_seconds: float = DEFAULT_TIME_LIMIT_SECONDS
    noise_p: float | None = None
    memory_budget_bytes: int | None = None
    output_format: str = "csv"
    output_path: str | None = None
    # widths >= threshold use the reduced trial count, e.g. ((17, 10), (21, 1))
    trial_schedule: tuple[tuple[int, int], ...] | None = None

    def validate(self):
        if not 2 <= self.min_width <= self.max_width:
            raise ValueError(
                f"need 2 <= min_width <= max_width, got {self.min_width}..{self.max_width}"
            )
        if self.trials_per_width < 1:
            raise ValueError(f"trials_per_width must be >= 1, got {self.trials_per_width}")
        if self.shots < 0:
            raise ValueError(f"shots must be >= 0, got {self.shots}")
        if self.time_limit_seconds <= 0:
            raise ValueError(f"time limit must be positive, got {self.time_limit_seconds}")
        if self.noise_p is not None:
            NoiseConfig(self.noise_p)
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"output format must be csv or json, got {self.output_format!r}")
        if self.trial_schedule is not None:
            for entry in self.trial_schedule:
                w, t = entry
                if t < 1:
                    raise ValueError(f"scheduled trials must be >= 1, got {entry}")
        return self

    def trials_for(self, width):
        trials = self.trials_per_width
        if self.trial_schedule:
            for threshold, reduced in sorted(self.trial_schedule):
                if width >= threshold:
                    trials = reduced
        return trials


@dataclass(frozen=True)
class BenchmarkRecord:
    width: int
    trial_index: int
    elapsed_seconds: float
    su4_count: int
    swap_count: int
    ideal_hop: float
    sampled_hop: float | None
    seed: int
    threads: int
    fusion: bool
    timestamp: float


@dataclass
class SweepResult:
    records: list = field(default_factory=list)
    decisions: list = field(default_factory=list)
    notices: list = field(default_factory=list)
    timed_out: bool = False


def _run_trial(config, width, trial, budget, threads):
    """One circuit instance: generate, execute (timed), analyze (untimed)."""
    circuit = generate_qv_circuit(width, config.master_seed, trial)
    if config.noise_p:
        # heavy set comes from the noiseless reference run (untimed);
        # the timed execution is the noisy trajectory
        ideal_state, _ = execute(circuit, threads=threads, memory_budget_bytes=budget)
        heavy = heavy_set(probabilities(ideal_state))
        noise_rng = RngStream(derive_seed(config.master_seed, width, trial, stream=_NOISE_STREAM))
        executed = inject_pauli_noise(circuit, NoiseConfig(config.noise_p), noise_rng)
        state, elapsed = execute(
            executed, threads=threads, fusion=config.fusion, memory_budget_bytes=budget
        )
        probs = probabilities(state)
        hop = hop_in_set(probs, heavy)
    else:
        executed = circuit
        state, elapsed = execute(
            circuit, threads=threads, fusion=config.fusion, memory_budget_bytes=budget
        )
        probs = probabilities(state)
        heavy = heavy_set(probs)
        hop = hop_in_set(probs, heavy)
    shot_hop = None
    if config.shots:
        rng = RngStream(derive_seed(config.master_seed, width, trial, stream=_MEASURE_STREAM))
        counts = sample_measurements(state, config.shots, rng)
        shot_hop = sampled_hop(counts, heavy)
    gates = count_gates(executed)
    return BenchmarkRecord(
        width=width,
        trial_index=trial,
        elapsed_seconds=elapsed,
        su4_count=gates["su4"],
        swap_count=gates["swap"],
        ideal_hop=hop,
        sampled_hop=shot_hop,
        seed=derive_seed(config.master_seed, width, trial),
        threads=threads,
        fusion=config.fusion,
        timestamp=time.time(),
    ), hop


def run_sweep(config, trial_hook=None):
    """Execute the configured width sweep.

    Widths whose statevector exceeds the memory budget are skipped with a
    notice; hitting the time limit stops the sweep but keeps partial
    results. ``trial_hook(circuit_width, trial)`` is called before each
    trial (used by the CLI for circuit export and progress).
    """
    config.validate()
    budget = (
        default_memory_budget()
        if config.memory_budget_bytes is None
        else config.memory_budget_bytes
    )
    threads = config.threads if config.threads and config.threads > 0 else (os.cpu_count() or 1)
    result = SweepResult()
    start = time.monotonic()
    for width in range(config.min_width, config.max_width + 1):
        if state_bytes(width) > budget:
            result.notices.append(
                ("capacity", width, f"{state_bytes(width)} bytes exceeds budget {budget}")
            )
            continue
        hops = []
        for trial in range(config.trials_for(width)):
            if time.monotonic() - start > config.time_limit_seconds:
                result.notices.append(("time_limit", width, f"stopped before trial {trial}"))
                result.timed_out = True
                break
            if trial_hook is not None:
                trial_hook(width, trial)
            record, hop = _run_trial(config, width, trial, budget, threads)
            result.records.append(record)
            hops.append(hop)
        if len(hops) >= 2:
            result.decisions.append(qv_decision(hops, width))
        if result.timed_out:
            break
    return result


@dataclass(frozen=True)
class ScalingRow:
    width: int
    median_time: float
    ratio_to_previous_width: float | None


@dataclass(frozen=True)
class ScalingReport:
    rows: tuple[ScalingRow, ...]
    geometric_mean_ratio: float


def scaling_report(records):
    """Per-width median execution time and consecutive-width time ratios."""
    by_width = {}
    for rec in records:
        by_width.setdefault(rec.width, []).append(rec.elapsed_seconds)
    widths = sorted(by_width)
    consecutive = [
        (w, w + 1) for w in widths if w + 1 in by_width
    ]
    if not consecutive:
        raise InsufficientDataError(
            "scaling report needs at least two consecutive widths with records"
        )
    medians = {w: float(np.median(by_width[w])) for w in widths}
    rows = []
    ratios = []
    for w in widths:
        ratio = None
        if w - 1 in medians:
            ratio = medians[w] / medians[w - 1]
            ratios.append(ratio)
        rows.append(ScalingRow(w, medians[w], ratio))
    geomean = math.exp(sum(math.log(r) for r in ratios) / len(ratios))
    return ScalingReport(tuple(rows), geomean)
