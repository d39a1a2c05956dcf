"""
Swapurify Entanglement Module

Wootters concurrence, singlet fraction, and the analytic concurrences and
probabilities of the swapping protocol.
"""

# General measures
from .concurrence import (
    ConcurrenceError,
    ConcurrenceReport,
    SPIN_FLIP,
    spin_flip,
    concurrence,
    concurrence_value,
    singlet_fraction,
    x_state_concurrence
)

# Closed forms
from .closed_forms import (
    SIGN_PATTERNS,
    concurrence_ab_phi,
    normalization_phi_round1,
    probability_phi_round1,
    concurrence_phi_round1,
    weak_probability_phi,
    concurrence_phi_asym,
    normalization_phi_asym,
    probability_phi_asym,
    concurrence_phi_round2,
    probability_phi_round2,
    tradeoff_product,
    round2_gain,
    roundn_weights,
    log_roundn_ratio,
    concurrence_phi_roundn,
    cumulative_probability_phi,
    rounds_to_reach,
    concurrence_chi_ab,
    probability_chi_swap,
    concurrence_chi_ac,
    concurrence_chi_ac_weak,
    weak_probability_chi
)

__all__ = [
    # General measures
    'ConcurrenceError',
    'ConcurrenceReport',
    'SPIN_FLIP',
    'spin_flip',
    'concurrence',
    'concurrence_value',
    'singlet_fraction',
    'x_state_concurrence',

    # Closed forms
    'SIGN_PATTERNS',
    'concurrence_ab_phi',
    'normalization_phi_round1',
    'probability_phi_round1',
    'concurrence_phi_round1',
    'weak_probability_phi',
    'concurrence_phi_asym',
    'normalization_phi_asym',
    'probability_phi_asym',
    'concurrence_phi_round2',
    'probability_phi_round2',
    'tradeoff_product',
    'round2_gain',
    'roundn_weights',
    'log_roundn_ratio',
    'concurrence_phi_roundn',
    'cumulative_probability_phi',
    'rounds_to_reach',
    'concurrence_chi_ab',
    'probability_chi_swap',
    'concurrence_chi_ac',
    'concurrence_chi_ac_weak',
    'weak_probability_chi'
]
