"""
Swapurify States Module

Pure states, the Bell basis and validated density matrices.
"""

# Models
from .models import (
    StateError,
    PureState,
    DensityMatrix
)

# Constructors
from .constructors import (
    BellLabel,
    PSI_LABELS,
    PHI_LABELS,
    ALL_LABELS,
    phi_pair,
    phi_pair_flipped,
    chi_pair,
    flip_pair,
    bell,
    to_density,
    product_density,
    maximally_mixed,
    basis_density,
    diagonal_density
)

__all__ = [
    # Models
    'StateError',
    'PureState',
    'DensityMatrix',

    # Constructors
    'BellLabel',
    'PSI_LABELS',
    'PHI_LABELS',
    'ALL_LABELS',
    'phi_pair',
    'phi_pair_flipped',
    'chi_pair',
    'flip_pair',
    'bell',
    'to_density',
    'product_density',
    'maximally_mixed',
    'basis_density',
    'diagonal_density'
]
