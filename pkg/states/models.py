"""
Swapurify State Models

Validated pure states and density matrices over small qubit registers.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from qmat import (
    DEFAULT_POLICY,
    MAX_QUBITS,
    ComplexMatrix,
    MatrixError,
    NumericsPolicy,
    as_matrix,
    hermitian_eigenvalues,
    is_hermitian,
    n_qubits_of,
)


class StateError(ValueError):
    """Exception raised when a state fails validation."""

    def __init__(self, message: str, suggestion: Optional[str] = None):
        """
        Initialize state error.

        Args:
            message: Error message
            suggestion: Optional hint for the caller
        """
        self.message = message
        self.suggestion = suggestion
        super().__init__(message)

    def __str__(self) -> str:
        """String representation."""
        if self.suggestion:
            return f"{self.message}\n{self.suggestion}"
        return self.message


def _check_register(n_qubits: int) -> None:
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise StateError(f"Register size must be 1..{MAX_QUBITS} qubits, got {n_qubits}")


@dataclass(frozen=True, eq=False)
class PureState:
    """
    Normalized state vector.

    Attributes:
        n_qubits: Register size
        amplitudes: Read-only complex vector of length 2^n
        atol: Norm tolerance used for validation
    """
    n_qubits: int
    amplitudes: np.ndarray
    atol: float = field(default=DEFAULT_POLICY.atol, compare=False, repr=False)

    def __post_init__(self):
        _check_register(self.n_qubits)
        amps = np.array(self.amplitudes, dtype=np.complex128, copy=True).reshape(-1)
        if amps.shape[0] != 2 ** self.n_qubits:
            raise StateError(
                f"Expected {2 ** self.n_qubits} amplitudes for {self.n_qubits} qubits, got {amps.shape[0]}"
            )
        if not np.all(np.isfinite(amps)):
            raise StateError("Amplitudes contain NaN or Inf")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > self.atol:
            raise StateError(
                f"State norm is {norm:.12g}, expected 1",
                "Constructors never renormalize; fix the amplitudes"
            )
        amps.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amps)

    def inner(self, other: 'PureState') -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Hermitian, unit-trace, positive semidefinite matrix over n qubits.

    Qubit 0 is the most significant bit of the basis index.

    Attributes:
        n_qubits: Register size
        matrix: Read-only 2^n x 2^n complex matrix
        atol: Tolerance used for validation
    """
    n_qubits: int
    matrix: ComplexMatrix
    atol: float = field(default=DEFAULT_POLICY.atol, compare=False, repr=False)

    def __post_init__(self):
        _check_register(self.n_qubits)
        try:
            m = as_matrix(self.matrix)
        except MatrixError as e:
            raise StateError(f"Invalid density matrix: {e.message}") from e
        dim = 2 ** self.n_qubits
        if m.shape != (dim, dim):
            raise StateError(f"Expected a {dim}x{dim} matrix, got {m.shape[0]}x{m.shape[1]}")
        if not is_hermitian(m, self.atol):
            raise StateError("Density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > self.atol:
            raise StateError(f"Density matrix trace is {tr.real:.12g}, expected 1")
        lowest = float(hermitian_eigenvalues(m)[-1])
        if lowest < -self.atol:
            raise StateError(f"Density matrix has negative eigenvalue {lowest:.3e}")
        object.__setattr__(self, 'matrix', m)

    @classmethod
    def from_matrix(cls, m, policy: NumericsPolicy = DEFAULT_POLICY) -> 'DensityMatrix':
        """
        Validate an arbitrary 2^n x 2^n matrix as a density matrix.

        Raises:
            StateError: If any density-matrix invariant fails
        """
        try:
            n = n_qubits_of(np.asarray(m))
        except (MatrixError, ValueError) as e:
            raise StateError(f"Invalid density matrix shape: {e}") from e
        return cls(n_qubits=n, matrix=m, atol=policy.atol)

    @property
    def dimension(self) -> int:
        return 2 ** self.n_qubits

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def purity(self) -> float:
        """trace(rho^2)."""
        return float(np.trace(self.matrix @ self.matrix).real)

    def is_pure(self) -> bool:
        return abs(self.purity() - 1.0) <= self.atol

    def entry(self, row_bits: str, col_bits: str) -> complex:
        """
        Matrix element <row_bits|rho|col_bits>, e.g. entry('01', '10').
        """
        if len(row_bits) != self.n_qubits or len(col_bits) != self.n_qubits:
            raise StateError(f"Basis labels must have {self.n_qubits} bits")
        return complex(self.matrix[int(row_bits, 2), int(col_bits, 2)])

    def flat_entries(self) -> List[List[float]]:
        """Row-major [re, im] pairs for JSON output."""
        return [[float(z.real), float(z.imag)] for z in self.matrix.reshape(-1)]

    def close_to(self, other: 'DensityMatrix', tol: float) -> bool:
        """Entrywise comparison within tol."""
        if self.n_qubits != other.n_qubits:
            return False
        return bool(np.max(np.abs(self.matrix - other.matrix)) <= tol)
