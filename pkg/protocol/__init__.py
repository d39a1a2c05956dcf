"""
Swapurify Protocol Module

Entanglement swapping with weak-measurement preprocessing, closed-form
stage states, enhancement-region scans and the purifiability predicate.
"""

# Models
from .models import (
    ProtocolError,
    ConfigError,
    NoEntanglementError,
    DegenerateBranchError,
    Family,
    WeakPolicy,
    ACCEPT_SETS,
    merged_label,
    ProtocolConfig,
    RoundResult,
    PurifiabilityCheck
)

# Simulation
from .swapping import (
    BOB_QUBITS,
    QUBIT_A,
    QUBIT_C,
    prepare_noisy_pairs,
    swap_outcomes,
    swap_round,
    weak_preprocess,
    run_protocol
)

# Closed-form states
from .closed_states import (
    damped_phi_state,
    damped_chi_state,
    swapped_phi_state,
    swapped_asym_state,
    weak_phi_state,
    roundn_phi_state,
    swapped_chi_state,
    weak_chi_state
)

# Scans
from .regions import (
    AXIS_NAMES,
    Method,
    Axis,
    PointResult,
    RegionGrid,
    Curve,
    ThresholdEntry,
    ThresholdReport,
    ChiSignReport,
    SIGN_POLICIES,
    is_increasing_chain,
    evaluate_point,
    default_threads,
    enhancement_region,
    phi_curve,
    chi_curve,
    threshold_checks,
    chi_sign_checks
)

# Purifiability
from .purifiability import purifiability_condition

__all__ = [
    # Models
    'ProtocolError',
    'ConfigError',
    'NoEntanglementError',
    'DegenerateBranchError',
    'Family',
    'WeakPolicy',
    'ACCEPT_SETS',
    'merged_label',
    'ProtocolConfig',
    'RoundResult',
    'PurifiabilityCheck',

    # Simulation
    'BOB_QUBITS',
    'QUBIT_A',
    'QUBIT_C',
    'prepare_noisy_pairs',
    'swap_outcomes',
    'swap_round',
    'weak_preprocess',
    'run_protocol',

    # Closed-form states
    'damped_phi_state',
    'damped_chi_state',
    'swapped_phi_state',
    'swapped_asym_state',
    'weak_phi_state',
    'roundn_phi_state',
    'swapped_chi_state',
    'weak_chi_state',

    # Scans
    'AXIS_NAMES',
    'Method',
    'Axis',
    'PointResult',
    'RegionGrid',
    'Curve',
    'ThresholdEntry',
    'ThresholdReport',
    'ChiSignReport',
    'SIGN_POLICIES',
    'is_increasing_chain',
    'evaluate_point',
    'default_threads',
    'enhancement_region',
    'phi_curve',
    'chi_curve',
    'threshold_checks',
    'chi_sign_checks',

    # Purifiability
    'purifiability_condition',
]
