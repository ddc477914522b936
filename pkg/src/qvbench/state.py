"""Dense statevector storage and gate application.

Bit convention (used everywhere in this package): qubit k is bit k of the
amplitude index, so qubit 0 is the least-significant bit. A two-qubit gate
matrix on ``targets = (t0, t1)`` is indexed by the subspace basis
``j = bit(t0) + 2*bit(t1)``.
"""

import os
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import psutil

from . import backend
from .errors import CapacityError

UNITARITY_TOL = 1e-12
SU4_DET_TOL = 1e-10

SWAP_MATRIX = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ],
    dtype=np.complex128,
)


class GateKind(str, Enum):
    SU4 = "su4"
    SWAP = "swap"
    PAULI2 = "pauli2"
    GENERIC1Q = "generic1q"
    GENERIC2Q = "generic2q"


def _frozen_matrix(matrix):
    out = np.array(matrix, dtype=np.complex128, order="C")
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class GateOp:
    """A 2x2 or 4x4 unitary acting on one or two qubit positions.

    Unitarity (and, for SU4, unit determinant) is checked once at
    construction, never per application.
    """

    kind: GateKind
    matrix: np.ndarray
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        object.__setattr__(self, "matrix", _frozen_matrix(self.matrix))
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        dim = 2 ** len(self.targets)
        if len(self.targets) not in (1, 2):
            raise ValueError(f"gates act on 1 or 2 qubits, got targets {self.targets}")
        if self.matrix.shape != (dim, dim):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match targets {self.targets}"
            )
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"duplicate targets {self.targets}")
        if any(t < 0 for t in self.targets):
            raise ValueError(f"negative target in {self.targets}")
        residual = np.abs(self.matrix.conj().T @ self.matrix - np.eye(dim)).max()
        if residual >= UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary (residual {residual:.3e})")
        if self.kind is GateKind.SU4:
            det = np.linalg.det(self.matrix)
            if abs(det - 1.0) >= SU4_DET_TOL:
                raise ValueError(f"SU4 gate determinant {det} is not 1")


@dataclass
class Statevector:
    """2^n complex double-precision amplitudes of an n-qubit register."""

    num_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    @property
    def dim(self):
        return 1 << self.num_qubits


def default_memory_budget():
    """0.9 x currently available physical memory, in bytes."""
    return int(psutil.virtual_memory().available * 0.9)


def state_bytes(num_qubits):
    return 16 << num_qubits


def new_zero_state(num_qubits, memory_budget_bytes=None):
    """Allocate |0...0>: amplitude 1 at index 0, all others 0."""
    if num_qubits < 1:
        raise ValueError(f"need at least one qubit, got {num_qubits}")
    budget = default_memory_budget() if memory_budget_bytes is None else memory_budget_bytes
    needed = state_bytes(num_qubits)
    if needed > budget:
        raise CapacityError(
            f"{num_qubits} qubits need {needed} bytes, budget is {budget}"
        )
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return Statevector(num_qubits, amps)


def _resolve_threads(threads):
    if threads is None or threads <= 0:
        return os.cpu_count() or 1
    return int(threads)


def _check_targets(state, targets):
    for t in targets:
        if not 0 <= t < state.num_qubits:
            raise ValueError(f"target {t} out of range for {state.num_qubits} qubits")


def apply_gate(state, gate, threads=None):
    """Apply ``gate`` to ``state`` in place."""
    _check_targets(state, gate.targets)
    nthreads = _resolve_threads(threads)
    kern = backend.kernels()
    if gate.kind is GateKind.SWAP:
        kern.apply_swap(state.amplitudes, gate.targets[0], gate.targets[1], nthreads)
    elif len(gate.targets) == 1:
        kern.apply_1q(state.amplitudes, gate.matrix, gate.targets[0], nthreads)
    else:
        kern.apply_2q(state.amplitudes, gate.matrix, gate.targets[0], gate.targets[1], nthreads)


def apply_swap(state, q0, q1, threads=None):
    """Exchange qubits q0 and q1 by index-pair swap (no matrix multiply)."""
    if q0 == q1:
        raise ValueError("swap targets must differ")
    _check_targets(state, (q0, q1))
    backend.kernels().apply_swap(state.amplitudes, q0, q1, _resolve_threads(threads))


def probabilities(state):
    """Outcome probabilities |a_i|^2 as a float array."""
    amps = state.amplitudes
    return amps.real**2 + amps.imag**2


def norm(state):
    return float(np.sqrt(probabilities(state).sum()))


def _ascending_2q_matrix(op):
    # matrix re-expressed with targets sorted ascending
    if op.targets[0] < op.targets[1]:
        return op.matrix
    return SWAP_MATRIX @ op.matrix @ SWAP_MATRIX


def fuse_gates(ops):
    """Merge gates that act on the same qubit pair (or same single qubit).

    A gate is merged into an earlier pending gate when every op in between
    acts on disjoint qubits, so the merge only commutes it past gates it
    commutes with. Later gates multiply on the left. Semantics-preserving:
    the fused sequence yields the same state as the original.
    """
    out = []
    last_touch = {}

    def _record(op):
        out.append(op)
        for q in op.targets:
            last_touch[q] = len(out) - 1

    for op in ops:
        if len(op.targets) == 2:
            a, b = op.targets
            ia = last_touch.get(a)
            if ia is not None and ia == last_touch.get(b):
                prev = out[ia]
                lo, hi = min(a, b), max(a, b)
                fused = _ascending_2q_matrix(op) @ _ascending_2q_matrix(prev)
                out[ia] = GateOp(GateKind.GENERIC2Q, fused, (lo, hi))
                continue
            _record(op)
        else:
            (a,) = op.targets
            ia = last_touch.get(a)
            if ia is not None and out[ia].targets == (a,):
                out[ia] = GateOp(GateKind.GENERIC1Q, op.matrix @ out[ia].matrix, (a,))
                continue
            _record(op)
    return out
