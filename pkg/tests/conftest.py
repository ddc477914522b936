"""Shared fixtures and the dense embedded-matrix oracle.

The oracle builds the full 2^n x 2^n operator for a gate by explicit
bit-level construction and multiplies the whole vector; it shares no code
with the engine's strided kernels.
"""

import numpy as np
import pytest

from qvbench import backend


def embed_unitary(matrix, targets, num_qubits):
    """Full-dimension embedding of a 1- or 2-qubit unitary.

    Row/column correspondence: subspace basis index j has bit b equal to
    bit targets[b] of the full index (qubit 0 = least-significant bit).
    """
    dim = 1 << num_qubits
    sub = 1 << len(targets)
    full = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(dim):
        jrow = 0
        rest = i
        for b, t in enumerate(targets):
            jrow |= ((i >> t) & 1) << b
            rest &= ~(1 << t)
        for jcol in range(sub):
            j = rest
            for b, t in enumerate(targets):
                if (jcol >> b) & 1:
                    j |= 1 << t
            full[i, j] = matrix[jrow, jcol]
    return full


def oracle_apply_ops(ops, num_qubits, initial=None):
    """Apply a gate sequence by dense matrix-vector products."""
    if initial is None:
        vec = np.zeros(1 << num_qubits, dtype=np.complex128)
        vec[0] = 1.0
    else:
        vec = np.array(initial, dtype=np.complex128)
    for op in ops:
        vec = embed_unitary(op.matrix, op.targets, num_qubits) @ vec
    return vec


def random_state(rng, num_qubits):
    vec = rng.standard_normal(1 << num_qubits) + 1j * rng.standard_normal(1 << num_qubits)
    return vec / np.linalg.norm(vec)


@pytest.fixture(params=backend.available_backends())
def each_backend(request):
    """Run the test once per available kernel backend."""
    previous = backend.get_backend()
    backend.set_backend(request.param)
    yield request.param
    backend.set_backend(previous)
