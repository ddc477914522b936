import numpy as np
import pytest

from qvbench import (
    CircuitFormatError,
    GateKind,
    GateOp,
    NoiseConfig,
    QvCircuit,
    count_gates,
    deserialize_circuit,
    execute,
    generate_qv_circuit,
    inject_pauli_noise,
    probabilities,
    serialize_circuit,
)
from qvbench.circuit import TWO_QUBIT_PAULIS, swap_op
from qvbench.sampling import QubitPermutation, RngStream, cycle_count
from qvbench.state import SWAP_MATRIX

from conftest import oracle_apply_ops


def _identity_perm_circuit(width, master_seed=0):
    """Circuit with all-identity permutations (forced layer construction)."""
    from qvbench.circuit import QvLayer
    from qvbench.sampling import sample_haar_su4

    rng = RngStream(master_seed)
    layers = []
    flattened = []
    for _ in range(width):
        su4s = tuple(
            GateOp(GateKind.SU4, sample_haar_su4(rng), (2 * j, 2 * j + 1))
            for j in range(width // 2)
        )
        layers.append(QvLayer(QubitPermutation(tuple(range(width))), (), su4s))
        flattened.extend(su4s)
    return QvCircuit(width, master_seed, 0, tuple(flattened), tuple(layers))


class TestGenerate:
    def test_width4_structure(self):
        circ = generate_qv_circuit(4, 11, 0)
        assert len(circ.layers) == 4
        assert count_gates(circ)["su4"] == 8

    def test_width2_structure(self):
        circ = generate_qv_circuit(2, 11, 0)
        assert len(circ.layers) == 2
        for layer in circ.layers:
            assert len(layer.su4_gates) == 1
            assert sorted(layer.permutation.mapping) == [0, 1]

    def test_width5_idle_qubit(self):
        circ = generate_qv_circuit(5, 11, 0)
        assert len(circ.layers) == 5
        assert count_gates(circ)["su4"] == 10
        for layer in circ.layers:
            targets = {t for gate in layer.su4_gates for t in gate.targets}
            assert targets == {0, 1, 2, 3}  # position 4 idles each layer

    def test_width_below_two_rejected(self):
        with pytest.raises(ValueError):
            generate_qv_circuit(1, 0, 0)

    def test_flattened_order_swaps_then_su4(self):
        circ = generate_qv_circuit(6, 3, 2)
        i = 0
        for layer in circ.layers:
            for a, b in layer.swaps:
                op = circ.flattened_ops[i]
                assert op.kind is GateKind.SWAP and op.targets == (a, b)
                i += 1
            for gate in layer.su4_gates:
                assert circ.flattened_ops[i] is gate
                i += 1
        assert i == len(circ.flattened_ops)

    def test_deterministic(self):
        a = generate_qv_circuit(5, 42, 3)
        b = generate_qv_circuit(5, 42, 3)
        assert serialize_circuit(a) == serialize_circuit(b)

    def test_trials_independent(self):
        a = generate_qv_circuit(5, 42, 3)
        b = generate_qv_circuit(5, 42, 4)
        assert serialize_circuit(a) != serialize_circuit(b)

    def test_layer_swaps_realize_permutation(self):
        circ = generate_qv_circuit(6, 17, 0)
        for layer in circ.layers:
            slots = list(range(6))
            for a, b in layer.swaps:
                slots[a], slots[b] = slots[b], slots[a]
            realized = [0] * 6
            for position, qubit in enumerate(slots):
                realized[qubit] = position
            assert tuple(realized) == layer.permutation.mapping


class TestCountGates:
    def test_identity_permutations(self):
        circ = _identity_perm_circuit(4)
        counts = count_gates(circ)
        assert counts == {"su4": 8, "swap": 0, "pauli": 0, "total": 8}

    def test_generic_width4_bounds(self):
        for trial in range(20):
            counts = count_gates(generate_qv_circuit(4, 23, trial))
            assert counts["su4"] == 8
            assert 0 <= counts["swap"] <= 12  # at most n-1 swaps per layer

    def test_swap_count_matches_cycle_formula(self):
        circ = generate_qv_circuit(7, 5, 1)
        expected = sum(7 - cycle_count(layer.permutation) for layer in circ.layers)
        assert count_gates(circ)["swap"] == expected

    def test_matches_execution_trace(self):
        circ = generate_qv_circuit(6, 31, 0)
        seen = {"su4": 0, "swap": 0, "pauli": 0, "total": 0}
        def trace(op):
            seen["total"] += 1
            if op.kind is GateKind.SU4:
                seen["su4"] += 1
            elif op.kind is GateKind.SWAP:
                seen["swap"] += 1
            elif op.kind is GateKind.PAULI2:
                seen["pauli"] += 1
        execute(circ, op_hook=trace)
        assert seen == count_gates(circ)


class TestExecute:
    def test_empty_circuit(self):
        circ = QvCircuit(2, 0, 0, ())
        state, elapsed = execute(circ)
        np.testing.assert_array_equal(state.amplitudes, [1, 0, 0, 0])
        assert elapsed >= 0.0

    @pytest.mark.parametrize("width", [2, 4, 6])
    def test_matches_dense_oracle(self, width, each_backend):
        circ = generate_qv_circuit(width, 77, 0)
        state, _ = execute(circ)
        expected = oracle_apply_ops(circ.flattened_ops, width)
        assert np.abs(state.amplitudes - expected).max() < 1e-10

    def test_fusion_preserves_probabilities(self):
        circ = generate_qv_circuit(6, 8, 0)
        plain, _ = execute(circ, fusion=False)
        fused, _ = execute(circ, fusion=True)
        assert np.abs(probabilities(plain) - probabilities(fused)).max() < 1e-10

    def test_capacity_propagates(self):
        from qvbench import CapacityError

        with pytest.raises(CapacityError):
            execute(generate_qv_circuit(8, 0, 0), memory_budget_bytes=64)


class TestNoise:
    def test_p_zero_unchanged(self):
        circ = generate_qv_circuit(4, 9, 0)
        noisy = inject_pauli_noise(circ, NoiseConfig(0.0), RngStream(1))
        assert noisy.flattened_ops == circ.flattened_ops
        assert noisy.noise_p == 0.0

    def test_p_one_inserts_after_every_su4(self):
        circ = generate_qv_circuit(5, 9, 0)
        noisy = inject_pauli_noise(circ, NoiseConfig(1.0), RngStream(1))
        counts = count_gates(noisy)
        assert counts["pauli"] == 10  # n * floor(n/2)
        ops = noisy.flattened_ops
        for i, op in enumerate(ops):
            if op.kind is GateKind.SU4:
                assert ops[i + 1].kind is GateKind.PAULI2
                assert ops[i + 1].targets == op.targets

    def test_noiseless_has_no_paulis(self):
        circ = generate_qv_circuit(6, 10, 2)
        assert all(op.kind is not GateKind.PAULI2 for op in circ.flattened_ops)
        assert count_gates(circ)["pauli"] == 0

    def test_noise_deterministic_given_stream(self):
        circ = generate_qv_circuit(5, 9, 0)
        a = inject_pauli_noise(circ, NoiseConfig(0.3), RngStream(4))
        b = inject_pauli_noise(circ, NoiseConfig(0.3), RngStream(4))
        assert serialize_circuit(a) == serialize_circuit(b)

    def test_input_circuit_untouched(self):
        circ = generate_qv_circuit(4, 9, 0)
        before = len(circ.flattened_ops)
        inject_pauli_noise(circ, NoiseConfig(1.0), RngStream(2))
        assert len(circ.flattened_ops) == before

    def test_paulis_are_unitary_involutions(self):
        assert len(TWO_QUBIT_PAULIS) == 15
        for mat in TWO_QUBIT_PAULIS:
            np.testing.assert_allclose(mat @ mat, np.eye(4), atol=1e-15)

    def test_invalid_probability(self):
        with pytest.raises(ValueError):
            NoiseConfig(1.5)


class TestSerialization:
    def test_round_trip_exact(self):
        circ = generate_qv_circuit(4, 55, 1)
        loaded = deserialize_circuit(serialize_circuit(circ))
        assert loaded.width == circ.width
        assert loaded.master_seed == circ.master_seed
        assert loaded.trial_index == circ.trial_index
        assert len(loaded.flattened_ops) == len(circ.flattened_ops)
        for got, want in zip(loaded.flattened_ops, circ.flattened_ops):
            assert got.kind == want.kind
            assert got.targets == want.targets
            assert np.array_equal(got.matrix, want.matrix)  # bit-faithful

    def test_round_trip_serialization_stable(self):
        circ = generate_qv_circuit(3, 55, 0)
        text = serialize_circuit(circ)
        assert serialize_circuit(deserialize_circuit(text)) == text

    def test_replay_matches_original_probabilities(self):
        circ = generate_qv_circuit(6, 60, 0)
        replayed = deserialize_circuit(serialize_circuit(circ))
        original, _ = execute(circ)
        replay, _ = execute(replayed)
        assert np.abs(probabilities(original) - probabilities(replay)).max() < 1e-12

    def test_wrong_dimension_rejected(self):
        import json

        circ = generate_qv_circuit(2, 1, 0)
        doc = json.loads(serialize_circuit(circ))
        doc["ops"][0]["matrix"] = [[[1.0, 0.0]] * 3] * 3
        with pytest.raises(CircuitFormatError):
            deserialize_circuit(json.dumps(doc))

    def test_non_unitary_rejected(self):
        import json

        circ = generate_qv_circuit(2, 1, 0)
        doc = json.loads(serialize_circuit(circ))
        doc["ops"][-1]["matrix"][0][0] = [2.5, 0.0]
        with pytest.raises(CircuitFormatError, match="unitary"):
            deserialize_circuit(json.dumps(doc))

    def test_bad_version_rejected(self):
        import json

        doc = json.loads(serialize_circuit(generate_qv_circuit(2, 1, 0)))
        doc["format_version"] = 99
        with pytest.raises(CircuitFormatError, match="format_version"):
            deserialize_circuit(json.dumps(doc))

    def test_bad_kind_rejected(self):
        import json

        doc = json.loads(serialize_circuit(generate_qv_circuit(2, 1, 0)))
        doc["ops"][0]["kind"] = "teleport"
        with pytest.raises(CircuitFormatError):
            deserialize_circuit(json.dumps(doc))

    def test_target_out_of_range_rejected(self):
        import json

        doc = json.loads(serialize_circuit(generate_qv_circuit(2, 1, 0)))
        doc["ops"][0]["targets"] = [0, 5]
        with pytest.raises(CircuitFormatError, match="range"):
            deserialize_circuit(json.dumps(doc))

    def test_not_json_rejected(self):
        with pytest.raises(CircuitFormatError, match="JSON"):
            deserialize_circuit("width: 4\nops: []")

    def test_swap_op_matrix(self):
        op = swap_op(0, 1)
        assert op.kind is GateKind.SWAP
        np.testing.assert_array_equal(op.matrix, SWAP_MATRIX)
