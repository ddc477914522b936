"""Heavy-output analysis: outcome medians, heavy sets, ideal and sampled
heavy-output probability (HOP), and the 2/3-threshold pass decision.

The heavy set contains outcomes strictly more probable than the median
outcome probability (the median of an even-sized multiset is the mean of
the two middle order statistics). Strictness makes a uniform distribution
score exactly 0 and a basis state exactly 1; that sharp edge is kept
deliberately.
"""

import math
from dataclasses import dataclass

import numpy as np

from .state import probabilities

NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class HeavyOutputReport:
    width: int
    median_probability: float
    heavy_set_size: int
    ideal_hop: float
    sampled_hop: float | None = None
    shots: int | None = None


@dataclass(frozen=True)
class QvDecision:
    width: int
    mean_hop: float
    stderr: float
    trials: int
    passed: bool
    quantum_volume: int | None


def _check_normalized(probs):
    total = float(np.sum(probs))
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise ValueError(f"probabilities sum to {total}, not 1")
    return probs


def median_probability(probs):
    """Mean of the two middle order statistics (the count 2^n is even)."""
    probs = _check_normalized(np.asarray(probs, dtype=np.float64))
    return float(np.median(probs))


def heavy_set(probs):
    """Indices with probability strictly greater than the median."""
    probs = np.asarray(probs, dtype=np.float64)
    median = median_probability(probs)
    return np.flatnonzero(probs > median)


def ideal_hop(probs):
    """Exact probability mass of the distribution's own heavy set."""
    probs = np.asarray(probs, dtype=np.float64)
    median = median_probability(probs)
    return float(probs[probs > median].sum())


def hop_in_set(probs, heavy):
    """Probability mass that ``probs`` places on a given heavy set.

    Used for noisy runs, where the heavy set comes from the noiseless
    reference state but the mass from the perturbed one.
    """
    probs = np.asarray(probs, dtype=np.float64)
    return float(probs[np.asarray(heavy, dtype=np.intp)].sum())


def sample_measurements(state, shots, rng):
    """Multinomial sample of all-qubit measurements; {outcome: count}."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    probs = _check_normalized(probabilities(state))
    counts = rng.gen.multinomial(shots, probs / probs.sum())
    hot = np.flatnonzero(counts)
    return {int(i): int(counts[i]) for i in hot}


def sampled_hop(counts, heavy):
    """Fraction of sampled measurements that landed in the heavy set."""
    shots = sum(counts.values())
    if shots == 0:
        raise ValueError("empty counts")
    heavy = np.asarray(heavy, dtype=np.intp)
    if heavy.size == 0:
        return 0.0
    heavy = np.sort(heavy)
    outcomes = np.fromiter(counts.keys(), dtype=np.intp, count=len(counts))
    values = np.fromiter(counts.values(), dtype=np.int64, count=len(counts))
    pos = np.searchsorted(heavy, outcomes)
    pos[pos == heavy.size] = heavy.size - 1
    in_heavy = heavy[pos] == outcomes
    return float(values[in_heavy].sum() / shots)


def analyze_heavy_output(state, shots=0, rng=None):
    """Full heavy-output report for a final state; sampling is optional."""
    probs = probabilities(state)
    median = median_probability(probs)
    heavy = np.flatnonzero(probs > median)
    report_sampled = None
    if shots:
        counts = sample_measurements(state, shots, rng)
        report_sampled = sampled_hop(counts, heavy)
    return HeavyOutputReport(
        width=state.num_qubits,
        median_probability=median,
        heavy_set_size=int(heavy.size),
        ideal_hop=float(probs[heavy].sum()),
        sampled_hop=report_sampled,
        shots=shots or None,
    )


def qv_decision(hops, width):
    """Pass iff mean(hops) - 2*stderr(hops) > 2/3 (one-sided two-sigma rule).

    The mean uses correctly-rounded summation so that trials sitting
    exactly on the threshold fail the strict inequality.
    """
    hops = [float(h) for h in hops]
    if len(hops) < 2:
        raise ValueError(f"need at least 2 trials, got {len(hops)}")
    mean = math.fsum(hops) / len(hops)
    variance = math.fsum((h - mean) ** 2 for h in hops) / (len(hops) - 1)
    stderr = math.sqrt(variance / len(hops))
    passed = mean - 2.0 * stderr > 2.0 / 3.0
    return QvDecision(
        width=width,
        mean_hop=mean,
        stderr=stderr,
        trials=len(hops),
        passed=passed,
        quantum_volume=(1 << width) if passed else None,
    )
