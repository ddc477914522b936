"""Statistical checks tying engine output to random-matrix references.

Scaled outcome probabilities of a wide random circuit should follow the
Porter-Thomas limit Exp(1); squared amplitudes of Haar-random states of
dimension N follow the finite-N marginal pdf (N-1)(1-y)^(N-2). Both are
exercised with one-sample Kolmogorov-Smirnov tests at asymptotic critical
values. The mild correlation among one state's probabilities (they sum to
1) is ignored; for large N its effect on the KS statistic is negligible.
"""

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import special, stats as sps

from .circuit import NoiseConfig, execute, generate_qv_circuit, inject_pauli_noise
from .heavy_output import heavy_set, hop_in_set, ideal_hop
from .sampling import RngStream, derive_seed
from .state import probabilities

DEFAULT_SIGNIFICANCE = 0.01


class FitReference(str, Enum):
    EXP1 = "exp1"
    FINITE_N_MARGINAL = "finite_n_marginal"


@dataclass(frozen=True)
class DistributionFitResult:
    sample_size: int
    ks_statistic: float
    ks_threshold: float
    passed: bool
    reference: FitReference


def ks_critical_value(sample_size, significance):
    """Asymptotic one-sample KS critical value at the given significance."""
    return float(special.kolmogi(significance)) / np.sqrt(sample_size)


def _fit(samples, cdf, reference, significance):
    samples = np.asarray(samples, dtype=np.float64)
    statistic = float(sps.kstest(samples, cdf).statistic)
    threshold = ks_critical_value(samples.size, significance)
    return DistributionFitResult(
        sample_size=int(samples.size),
        ks_statistic=statistic,
        ks_threshold=threshold,
        passed=statistic < threshold,
        reference=reference,
    )


def porter_thomas_fit(probs, significance=DEFAULT_SIGNIFICANCE):
    """KS fit of N*p_i against Exp(1), N = number of outcomes."""
    probs = np.asarray(probs, dtype=np.float64)
    if probs.size and np.ptp(probs) == 0.0:
        warnings.warn("degenerate input: all probabilities equal; fit will fail")
    eta = probs * probs.size
    return _fit(eta, lambda x: 1.0 - np.exp(-x), FitReference.EXP1, significance)


def finite_n_marginal_fit(samples, dim, significance=DEFAULT_SIGNIFICANCE):
    """KS fit of squared amplitudes in [0, 1] against CDF 1 - (1-y)^(N-1)."""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.size and (samples.min() < 0.0 or samples.max() > 1.0):
        raise ValueError("squared amplitudes must lie in [0, 1]")
    cdf = lambda y: 1.0 - (1.0 - np.minimum(y, 1.0)) ** (dim - 1)
    return _fit(samples, cdf, FitReference.FINITE_N_MARGINAL, significance)


def haar_amplitude_squares(rng, dim, count):
    """One squared amplitude from each of ``count`` Haar-random states.

    States are normalized complex Gaussian vectors; the first component's
    squared magnitude is returned (any fixed component has the marginal
    law, and one draw per state keeps samples independent).
    """
    z = rng.gen.standard_normal((count, dim)) + 1j * rng.gen.standard_normal((count, dim))
    norms = np.einsum("ij,ij->i", z.real, z.real) + np.einsum("ij,ij->i", z.imag, z.imag)
    return (z[:, 0].real ** 2 + z[:, 0].imag ** 2) / norms


@dataclass(frozen=True)
class HopStat:
    width: int
    mean_hop: float
    stderr: float
    trials: int


@dataclass(frozen=True)
class NoisyHopStat:
    noise_p: float
    mean_hop: float
    stderr: float
    trials: int


def _mean_stderr(values):
    values = np.asarray(values, dtype=np.float64)
    stderr = float(values.std(ddof=1) / np.sqrt(values.size)) if values.size > 1 else 0.0
    return float(values.mean()), stderr


def hop_convergence_suite(widths, trials_per_width, master_seed, threads=None):
    """Mean ideal HOP per width over fresh random circuits.

    Pure function of its arguments; the mean approaches (1 + ln 2)/2
    from wider circuits.
    """
    rows = []
    for width in widths:
        hops = []
        for trial in range(trials_per_width):
            circ = generate_qv_circuit(width, master_seed, trial)
            state, _ = execute(circ, threads=threads)
            hops.append(ideal_hop(probabilities(state)))
        mean, stderr = _mean_stderr(hops)
        rows.append(HopStat(width, mean, stderr, trials_per_width))
    return rows


def noisy_hop_suite(width, p_values, trials, master_seed, threads=None):
    """Mean HOP per noise strength, measured against the noiseless heavy set.

    Each trial reuses one circuit across all p values (paired comparison);
    noise insertions draw from an independent stream per (trial, p).
    """
    p_values = list(p_values)
    per_p = [[] for _ in p_values]
    for trial in range(trials):
        circ = generate_qv_circuit(width, master_seed, trial)
        ideal_state, _ = execute(circ, threads=threads)
        heavy = heavy_set(probabilities(ideal_state))
        for k, p in enumerate(p_values):
            if p == 0.0:
                per_p[k].append(hop_in_set(probabilities(ideal_state), heavy))
                continue
            noise_rng = RngStream(derive_seed(master_seed, width, trial, stream=1 + k))
            noisy = inject_pauli_noise(circ, NoiseConfig(p), noise_rng)
            noisy_state, _ = execute(noisy, threads=threads)
            per_p[k].append(hop_in_set(probabilities(noisy_state), heavy))
    rows = []
    for p, hops in zip(p_values, per_p):
        mean, stderr = _mean_stderr(hops)
        rows.append(NoisyHopStat(float(p), mean, stderr, trials))
    return rows
