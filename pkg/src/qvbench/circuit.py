"""Quantum-volume model circuits: generation, gate accounting, noise
injection, timed execution, and interchange serialization.

A circuit of width n has exactly n layers; each layer is a uniform random
permutation of the qubit positions (realized as SWAP gates) followed by a
row of Haar-random SU(4) gates on the post-permutation pairs (2j, 2j+1).
For odd widths the last position idles each layer.
"""

import json
import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CircuitFormatError
from .sampling import (
    QubitPermutation,
    RngStream,
    derive_seed,
    permutation_to_swaps,
    sample_haar_su4,
    sample_permutation,
)
from .state import SWAP_MATRIX, GateKind, GateOp, apply_gate, fuse_gates, new_zero_state

FORMAT_VERSION = 1

_PAULI_1Q = (
    np.eye(2, dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

# 15 non-identity two-qubit Paulis; index j = low + 4*high, matrix indexed
# per the package bit convention so the low factor acts on targets[0]
TWO_QUBIT_PAULIS = tuple(
    np.kron(_PAULI_1Q[j >> 2], _PAULI_1Q[j & 3]) for j in range(1, 16)
)


@dataclass(frozen=True)
class QvLayer:
    permutation: QubitPermutation
    swaps: tuple[tuple[int, int], ...]
    su4_gates: tuple[GateOp, ...]


@dataclass(frozen=True)
class QvCircuit:
    """Width, n layers, and the flattened op sequence actually executed.

    ``layers`` is None for circuits loaded from an interchange document
    (only the op list is serialized).
    """

    width: int
    master_seed: int
    trial_index: int
    flattened_ops: tuple[GateOp, ...]
    layers: tuple[QvLayer, ...] | None = None
    noise_p: float | None = None


@dataclass(frozen=True)
class NoiseConfig:
    two_qubit_depolarizing_p: float

    def __post_init__(self):
        p = self.two_qubit_depolarizing_p
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"noise probability must be in [0, 1], got {p}")


def swap_op(q0, q1):
    return GateOp(GateKind.SWAP, SWAP_MATRIX, (q0, q1))


def generate_qv_circuit(width, master_seed, trial_index=0):
    """Deterministically generate the QV circuit for (master_seed, width, trial).

    Per layer the stream is consumed in a fixed order: the permutation
    first, then the floor(width/2) SU(4) matrices.
    """
    if width < 2:
        raise ValueError(f"quantum volume circuits need width >= 2, got {width}")
    rng = RngStream(derive_seed(master_seed, width, trial_index))
    layers = []
    flattened = []
    for _ in range(width):
        perm = sample_permutation(rng, width)
        swaps = tuple(permutation_to_swaps(perm))
        su4s = tuple(
            GateOp(GateKind.SU4, sample_haar_su4(rng), (2 * j, 2 * j + 1))
            for j in range(width // 2)
        )
        layers.append(QvLayer(perm, swaps, su4s))
        flattened.extend(swap_op(a, b) for a, b in swaps)
        flattened.extend(su4s)
    return QvCircuit(
        width=width,
        master_seed=int(master_seed),
        trial_index=int(trial_index),
        flattened_ops=tuple(flattened),
        layers=tuple(layers),
    )


def count_gates(circuit):
    """Gate counts of the executed op sequence, keyed by kind."""
    su4 = swap = pauli = 0
    for op in circuit.flattened_ops:
        if op.kind is GateKind.SU4:
            su4 += 1
        elif op.kind is GateKind.SWAP:
            swap += 1
        elif op.kind is GateKind.PAULI2:
            pauli += 1
    return {
        "su4": su4,
        "swap": swap,
        "pauli": pauli,
        "total": len(circuit.flattened_ops),
    }


class ExecutionResult(NamedTuple):
    final_state: object
    elapsed_seconds: float


def execute(circuit, threads=None, fusion=False, memory_budget_bytes=None, op_hook=None):
    """Run the circuit on |0...0> and time the execution only.

    The monotonic-clock window covers gate application plus fusion (when
    enabled); circuit generation and any output analysis stay outside it.
    ``op_hook``, if given, is called with each op as it is applied
    (instrumentation for tests; adds overhead).
    """
    state = new_zero_state(circuit.width, memory_budget_bytes)
    ops = circuit.flattened_ops
    start = time.perf_counter()
    if fusion:
        ops = fuse_gates(ops)
    for op in ops:
        if op_hook is not None:
            op_hook(op)
        apply_gate(state, op, threads=threads)
    elapsed = time.perf_counter() - start
    return ExecutionResult(state, elapsed)


def inject_pauli_noise(circuit, noise, rng):
    """Stochastic trajectory noise: after each SU4 gate, with probability p,
    insert one uniformly chosen non-identity two-qubit Pauli on the same
    targets. Returns a new circuit; the input is unchanged."""
    p = noise.two_qubit_depolarizing_p
    ops = []
    for op in circuit.flattened_ops:
        ops.append(op)
        if op.kind is GateKind.SU4 and rng.gen.random() < p:
            which = int(rng.gen.integers(0, 15))
            ops.append(GateOp(GateKind.PAULI2, TWO_QUBIT_PAULIS[which], op.targets))
    return QvCircuit(
        width=circuit.width,
        master_seed=circuit.master_seed,
        trial_index=circuit.trial_index,
        flattened_ops=tuple(ops),
        layers=circuit.layers,
        noise_p=p,
    )


def _complex_pair(z):
    return [float(z.real), float(z.imag)]


def serialize_circuit(circuit):
    """Versioned interchange document (JSON text).

    Complex entries are emitted as [re, im] pairs with shortest
    round-trip decimal encoding, so matrices reload bit-faithfully.
    """
    doc = {
        "format_version": FORMAT_VERSION,
        "width": circuit.width,
        "master_seed": circuit.master_seed,
        "trial_index": circuit.trial_index,
        "noise_p": circuit.noise_p,
        "ops": [
            {
                "kind": op.kind.value,
                "targets": list(op.targets),
                "matrix": [[_complex_pair(z) for z in row] for row in op.matrix],
            }
            for op in circuit.flattened_ops
        ],
    }
    return json.dumps(doc, indent=1)


def deserialize_circuit(text):
    """Parse an interchange document; validates structure and unitarity."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CircuitFormatError("top level must be an object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise CircuitFormatError(f"unsupported format_version {doc.get('format_version')!r}")
    for key in ("width", "master_seed", "trial_index", "ops"):
        if key not in doc:
            raise CircuitFormatError(f"missing field {key!r}")
    width = doc["width"]
    if not isinstance(width, int) or width < 1:
        raise CircuitFormatError(f"bad width {width!r}")
    ops = []
    for entry in doc["ops"]:
        try:
            kind = GateKind(entry["kind"])
            targets = tuple(int(t) for t in entry["targets"])
            rows = entry["matrix"]
            matrix = np.array(
                [[complex(re, im) for re, im in row] for row in rows],
                dtype=np.complex128,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CircuitFormatError(f"malformed op entry: {exc}") from exc
        if matrix.shape != (2 ** len(targets),) * 2:
            raise CircuitFormatError(
                f"matrix shape {matrix.shape} does not match targets {targets}"
            )
        if any(t >= width for t in targets):
            raise CircuitFormatError(f"target out of range in {targets}")
        try:
            ops.append(GateOp(kind, matrix, targets))
        except ValueError as exc:
            raise CircuitFormatError(str(exc)) from exc
    return QvCircuit(
        width=width,
        master_seed=int(doc["master_seed"]),
        trial_index=int(doc["trial_index"]),
        flattened_ops=tuple(ops),
        layers=None,
        noise_p=doc.get("noise_p"),
    )
