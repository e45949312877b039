"""gateforge: canonical forms, interaction costs, time-optimal control
protocols, and communication classification for two-qubit gates.

Given any two-qubit gate and any pure two-qubit interaction, the package
computes the gate's canonical (KAK) decomposition, the minimal interaction
time needed to realize it under fast local control, an explicit protocol of
at most three drift segments achieving that time, and the gate's classical/
quantum transmission capability class.
"""

from .canonical import (
    KakDecomposition,
    alpha_to_lambda,
    canonical_reduce,
    hamiltonian_canonical,
    interaction_content,
    is_canonical,
    is_s_ordered,
    kak_decompose,
    lambda_to_alpha,
    s_order,
)
from .comm import (
    CommTask,
    GateClass,
    TaskCostReport,
    capabilities,
    capability_row,
    classify,
    family_gate,
    task_cost,
)
from .cost import (
    CostReport,
    OrderVerdict,
    feasible,
    interaction_cost,
    named_gate_cost,
    partial_order,
)
from .errors import (
    BetaOutOfRangeError,
    BranchResolutionError,
    DiagonalizationFailedError,
    GateforgeError,
    ImproperRotationError,
    InfeasibleError,
    NegativeDurationError,
    NoTripleFoundError,
    NonUnitaryError,
    NotAProductError,
    NotMajorizedError,
    NotSymmetricError,
    NotTracelessError,
    SynthesisResidualError,
    UnknownGateError,
    ValidationError,
)
from .gates import CNOT, DCNOT, IDENTITY, SWAP, controlled_gate, controlled_u, named_gate
from .linalg import (
    LocalUnitaryPair,
    drift_exponential,
    from_magic,
    is_unitary,
    joint_diagonalize_symmetric_unitary,
    kron_factor,
    so4_to_local,
    special_normalize,
    to_magic,
)
from .majorization import (
    PermutationWeighting,
    birkhoff_express,
    majorizes,
    min_time,
    s_majorizes,
)
from .protocol import (
    Protocol,
    Segment,
    VerificationReport,
    phase_free_distance,
    simulate,
    synthesize,
    trajectory_check,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "CNOT",
    "DCNOT",
    "IDENTITY",
    "SWAP",
    "BetaOutOfRangeError",
    "BranchResolutionError",
    "CommTask",
    "CostReport",
    "DiagonalizationFailedError",
    "GateClass",
    "GateforgeError",
    "ImproperRotationError",
    "InfeasibleError",
    "KakDecomposition",
    "LocalUnitaryPair",
    "NegativeDurationError",
    "NoTripleFoundError",
    "NonUnitaryError",
    "NotAProductError",
    "NotMajorizedError",
    "NotSymmetricError",
    "NotTracelessError",
    "OrderVerdict",
    "PermutationWeighting",
    "Protocol",
    "Segment",
    "SynthesisResidualError",
    "TaskCostReport",
    "UnknownGateError",
    "ValidationError",
    "VerificationReport",
    "alpha_to_lambda",
    "birkhoff_express",
    "canonical_reduce",
    "capabilities",
    "capability_row",
    "classify",
    "controlled_gate",
    "controlled_u",
    "drift_exponential",
    "family_gate",
    "feasible",
    "from_magic",
    "hamiltonian_canonical",
    "interaction_content",
    "interaction_cost",
    "is_canonical",
    "is_s_ordered",
    "is_unitary",
    "joint_diagonalize_symmetric_unitary",
    "kak_decompose",
    "kron_factor",
    "lambda_to_alpha",
    "majorizes",
    "min_time",
    "named_gate",
    "named_gate_cost",
    "partial_order",
    "phase_free_distance",
    "s_majorizes",
    "s_order",
    "simulate",
    "so4_to_local",
    "special_normalize",
    "synthesize",
    "task_cost",
    "to_magic",
    "trajectory_check",
    "verify",
]
