"""corrqec: correlated-noise Pauli channels, codes, recovery, and fidelity."""

from .channels import (
    FLAVOR_BIT,
    FLAVOR_PHASE,
    MODEL_I,
    MODEL_II,
    ChannelParams,
    NoiseChannel,
    build_channel,
    channel_from_json_dict,
    conditional_probability,
    model1_channel,
    model2_channel,
    phase_flavor,
)
from .codes import (
    QuantumCode,
    apply_cnot,
    bitflip3,
    code_from_json_dict,
    concatenate,
    dfs2,
    hadamard_conjugate_code,
    hadamard_transform,
    pattern_state,
    phaseflip3,
    trivial_code,
)
from .errors import (
    CapacityError,
    ContractViolationError,
    DimensionError,
    ParameterError,
    UnsupportedPairError,
)
from .fidelity import (
    FidelityResult,
    ThresholdPoint,
    closed_form,
    dense_oracle_fidelity,
    entanglement_fidelity_corrected,
    entanglement_fidelity_unencoded,
    evaluate,
    failure_probability,
    has_closed_form,
    threshold_mu,
)
from .pauli import (
    PauliString,
    SparseState,
    apply_to_basis,
    apply_to_state,
    basis_state,
    hadamard_conjugate,
    matrix_element,
    multiply,
)
from .recovery import (
    DetectabilityReport,
    RecoveryOp,
    RecoverySet,
    alternative_maximal_sets,
    build_recovery,
    correctable_set,
    detectable_set,
    is_detectable,
    non_detectable_set,
    operators_to_json,
    trace_preservation_deviation,
    verify_trace_preserving,
)
from .schemes import BASE_SCHEMES, build_code, resolve_scheme, scheme_qubits, scheme_recovery

__version__ = "0.1.0"
