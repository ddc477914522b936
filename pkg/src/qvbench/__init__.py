"""Statevector quantum-volume simulation engine and benchmark harness."""

from .backend import available_backends, get_backend, set_backend
from .circuit import (
    NoiseConfig,
    QvCircuit,
    QvLayer,
    count_gates,
    deserialize_circuit,
    execute,
    generate_qv_circuit,
    inject_pauli_noise,
    serialize_circuit,
)
from .errors import CapacityError, CircuitFormatError, InsufficientDataError
from .heavy_output import (
    HeavyOutputReport,
    QvDecision,
    analyze_heavy_output,
    heavy_set,
    hop_in_set,
    ideal_hop,
    median_probability,
    qv_decision,
    sample_measurements,
    sampled_hop,
)
from .sampling import (
    QubitPermutation,
    RngStream,
    derive_seed,
    permutation_to_swaps,
    sample_haar_su4,
    sample_permutation,
)
from .state import (
    GateKind,
    GateOp,
    Statevector,
    apply_gate,
    apply_swap,
    fuse_gates,
    new_zero_state,
    probabilities,
)

__version__ = "0.1.0"
