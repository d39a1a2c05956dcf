"""
Swapurify Matrix Kernel

Dense complex matrices, Kronecker products, partial traces and eigenvalues
for registers of up to four qubits.
"""

# Policy
from .numerics import (
    NumericsPolicy,
    DEFAULT_POLICY
)

# Errors
from .errors import (
    MatrixError,
    DimensionError,
    NonFiniteError,
    EigenConvergenceError
)

# Matrix operations
from .matrix import (
    MAX_QUBITS,
    ComplexMatrix,
    as_matrix,
    n_qubits_of,
    identity,
    kron,
    kron_all,
    dagger,
    is_hermitian,
    embed,
    partial_trace
)

# Eigenvalues
from .eigen import (
    Spectrum,
    eigenvalues,
    hermitian_eigenvalues
)

__all__ = [
    # Policy
    'NumericsPolicy',
    'DEFAULT_POLICY',

    # Errors
    'MatrixError',
    'DimensionError',
    'NonFiniteError',
    'EigenConvergenceError',

    # Matrix operations
    'MAX_QUBITS',
    'ComplexMatrix',
    'as_matrix',
    'n_qubits_of',
    'identity',
    'kron',
    'kron_all',
    'dagger',
    'is_hermitian',
    'embed',
    'partial_trace',

    # Eigenvalues
    'Spectrum',
    'eigenvalues',
    'hermitian_eigenvalues'
]
