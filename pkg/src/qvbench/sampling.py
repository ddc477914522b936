"""Reproducible randomness: Haar-random SU(4), uniform qubit permutations,
and deterministic per-trial seed derivation.

Streams are backed by Philox (counter-based), so identical seeds give
identical sequences; independent trials derive independent streams with
:func:`derive_seed` instead of sharing generator state.
"""

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class RngStream:
    """A seeded, single-owner random stream."""

    def __init__(self, seed):
        self.seed = int(seed) & _MASK64
        self.gen = np.random.Generator(np.random.Philox(key=self.seed))

    def __repr__(self):
        return f"RngStream(seed={self.seed:#x})"


def _mix64(z):
    # splitmix64 finalizer
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed, width, trial_index, stream=0):
    """Collision-resistant 64-bit seed for one (width, trial) random stream.

    ``stream`` separates auxiliary draws (noise insertion, measurement
    sampling) from circuit generation for the same trial.
    """
    h = _mix64(int(master_seed) & _MASK64)
    for part in (width, trial_index, stream):
        h = _mix64((h + _GOLDEN + int(part)) & _MASK64)
    return h


@dataclass(frozen=True)
class QubitPermutation:
    """A bijection on qubit positions; mapping[i] is the new position of qubit i."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(int(p) for p in self.mapping))
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError(f"{self.mapping} is not a permutation of 0..{len(self.mapping) - 1}")

    @property
    def n(self):
        return len(self.mapping)


def sample_haar_su4(rng):
    """Draw a Haar-random SU(4) matrix.

    Complex Ginibre -> QR, with Q's columns rescaled by the phases of R's
    diagonal (plain QR alone is not Haar-uniform), then a global phase
    divides out the determinant's fourth root. The phase projection does
    not affect measurement probabilities.
    """
    while True:
        z = rng.gen.standard_normal((4, 4)) + 1j * rng.gen.standard_normal((4, 4))
        q, r = np.linalg.qr(z / np.sqrt(2.0))
        d = np.diagonal(r)
        if np.any(d == 0):  # degenerate draw; probability zero
            continue
        q = q * (d / np.abs(d))
        det = np.linalg.det(q)
        q = q * np.exp(-1j * np.angle(det) / 4.0)
        return q


def sample_permutation(rng, n):
    """Uniform random permutation of n qubit positions (Fisher-Yates)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return QubitPermutation(tuple(int(p) for p in rng.gen.permutation(n)))


def cycle_count(perm):
    """Number of cycles of the permutation, fixed points included."""
    seen = [False] * perm.n
    cycles = 0
    for start in range(perm.n):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm.mapping[i]
    return cycles


def permutation_to_swaps(perm):
    """Minimal transposition sequence realizing the permutation.

    Applied left-to-right, the swaps move the content of qubit i to
    position mapping[i]; the count is n minus the number of cycles.
    """
    seen = [False] * perm.n
    swaps = []
    for start in range(perm.n):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = perm.mapping[i]
        for other in cycle[1:]:
            swaps.append((start, other))
    return swaps
