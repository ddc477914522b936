import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as sps

from qvbench.sampling import (
    QubitPermutation,
    RngStream,
    cycle_count,
    derive_seed,
    permutation_to_swaps,
    sample_haar_su4,
    sample_permutation,
)


class TestRngStream:
    def test_same_seed_same_sequence(self):
        a = RngStream(123).gen.integers(0, 2**63, size=32)
        b = RngStream(123).gen.integers(0, 2**63, size=32)
        np.testing.assert_array_equal(a, b)

    def test_different_seeds_differ(self):
        a = RngStream(123).gen.integers(0, 2**63, size=32)
        b = RngStream(124).gen.integers(0, 2**63, size=32)
        assert not np.array_equal(a, b)

    def test_counter_based_stream_is_stable(self):
        # Philox raw output is specified by the algorithm, not the platform
        raw = np.random.Philox(key=99).random_raw(3)
        assert list(raw) == list(np.random.Philox(key=99).random_raw(3))


class TestHaarSu4:
    def test_unitarity_and_determinant(self):
        rng = RngStream(0)
        for _ in range(200):
            u = sample_haar_su4(rng)
            assert np.abs(u.conj().T @ u - np.eye(4)).max() < 1e-12
            assert abs(np.linalg.det(u) - 1.0) < 1e-10

    def test_entry_second_moment(self):
        # Haar: E|U_ij|^2 = 1/4 for dimension 4
        rng = RngStream(314)
        mean = np.mean([abs(sample_haar_su4(rng)[0, 0]) ** 2 for _ in range(10_000)])
        assert abs(mean - 0.25) < 0.01

    def test_left_invariance_proxy(self):
        # |entry|^2 of V @ U matches that of U for fixed V
        rng = RngStream(2718)
        fixed = sample_haar_su4(rng)
        plain = np.array([abs(sample_haar_su4(rng)[0, 0]) ** 2 for _ in range(10_000)])
        rotated = np.array(
            [abs((fixed @ sample_haar_su4(rng))[0, 0]) ** 2 for _ in range(10_000)]
        )
        distance = sps.ks_2samp(plain, rotated).statistic
        assert distance < 0.02


class TestPermutations:
    def test_single_qubit_identity(self):
        assert sample_permutation(RngStream(5), 1).mapping == (0,)

    def test_two_qubits_balanced(self):
        rng = RngStream(8)
        hits = sum(sample_permutation(rng, 2).mapping == (0, 1) for _ in range(10_000))
        assert abs(hits / 10_000 - 0.5) < 0.02

    def test_uniform_over_s4(self):
        rng = RngStream(13)
        draws = 24_000
        counts = {}
        for _ in range(draws):
            key = sample_permutation(rng, 4).mapping
            counts[key] = counts.get(key, 0) + 1
        assert len(counts) == 24
        expected = draws / 24
        sigma = np.sqrt(draws * (1 / 24) * (1 - 1 / 24))
        for count in counts.values():
            assert abs(count - expected) < 3 * sigma

    def test_invalid_mapping_rejected(self):
        with pytest.raises(ValueError):
            QubitPermutation((0, 0, 1))


def _apply_swaps_to_positions(n, swaps):
    # content tracking: slots[p] = original qubit now at position p
    slots = list(range(n))
    for a, b in swaps:
        slots[a], slots[b] = slots[b], slots[a]
    realized = [0] * n
    for position, qubit in enumerate(slots):
        realized[qubit] = position
    return tuple(realized)


class TestPermutationToSwaps:
    def test_identity_is_empty(self):
        for n in range(1, 6):
            assert permutation_to_swaps(QubitPermutation(tuple(range(n)))) == []

    def test_transposition(self):
        assert permutation_to_swaps(QubitPermutation((1, 0))) == [(0, 1)]

    def test_three_cycle(self):
        perm = QubitPermutation((1, 2, 0))
        swaps = permutation_to_swaps(perm)
        assert len(swaps) == 2
        assert _apply_swaps_to_positions(3, swaps) == perm.mapping

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_exhaustive_minimal_and_correct(self, n):
        for mapping in itertools.permutations(range(n)):
            perm = QubitPermutation(mapping)
            swaps = permutation_to_swaps(perm)
            assert len(swaps) == n - cycle_count(perm)
            assert _apply_swaps_to_positions(n, swaps) == mapping


@settings(max_examples=50, deadline=None)
@given(st.permutations(list(range(7))))
def test_swaps_realize_any_permutation(mapping):
    perm = QubitPermutation(tuple(mapping))
    swaps = permutation_to_swaps(perm)
    assert _apply_swaps_to_positions(7, swaps) == perm.mapping
    assert len(swaps) == 7 - cycle_count(perm)


class TestDeriveSeed:
    def test_deterministic(self):
        assert derive_seed(7, 10, 3) == derive_seed(7, 10, 3)

    def test_trial_collision_scan(self):
        rng = np.random.default_rng(6)
        for _ in range(10_000):
            s, w, t = rng.integers(0, 2**62, size=3)
            assert derive_seed(s, w, t) != derive_seed(s, w, t + 1)

    def test_master_collision_scan(self):
        rng = np.random.default_rng(7)
        for _ in range(10_000):
            s, w, t = rng.integers(0, 2**62, size=3)
            assert derive_seed(s, w, t) != derive_seed(s + 1, w, t)

    def test_stream_tag_separates(self):
        assert derive_seed(1, 4, 0, stream=0) != derive_seed(1, 4, 0, stream=1)

    def test_width_changes_seed(self):
        assert derive_seed(1, 4, 0) != derive_seed(1, 5, 0)
