"""
Swapurify Channel Models

Quantum channels represented by their Kraus operators.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from qmat import DEFAULT_POLICY, MatrixError, NumericsPolicy, as_matrix, n_qubits_of


class ChannelError(ValueError):
    """Exception raised for invalid channels or channel applications."""

    def __init__(self, message: str, suggestion: Optional[str] = None):
        """
        Initialize channel error.

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


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """
    Channel rho -> sum_mu K_mu rho K_mu^dagger.

    Attributes:
        operators: Kraus operators, all of the same 2^k x 2^k shape
        label: Human-readable name, e.g. 'AD(p=0.1)'
        completeness_error: max |sum K^dagger K - I|, computed on construction
        atol: Tolerance the completeness certificate was checked against
    """
    operators: Tuple[np.ndarray, ...]
    label: str
    completeness_error: float = field(init=False)
    atol: float = field(default=DEFAULT_POLICY.atol, compare=False, repr=False)

    def __post_init__(self):
        if not self.operators:
            raise ChannelError("A channel needs at least one Kraus operator")
        try:
            ops = tuple(as_matrix(k) for k in self.operators)
            sizes = {n_qubits_of(k) for k in ops}
        except MatrixError as e:
            raise ChannelError(f"Invalid Kraus operator: {e.message}") from e
        if len(sizes) != 1:
            raise ChannelError("Kraus operators have mismatched shapes")

        total = sum(np.conj(k).T @ k for k in ops)
        error = float(np.max(np.abs(total - np.eye(total.shape[0]))))
        object.__setattr__(self, 'operators', ops)
        object.__setattr__(self, 'completeness_error', error)
        if error > self.atol:
            raise ChannelError(
                f"Channel {self.label} violates completeness by {error:.3e}",
                "Kraus operators must satisfy sum K^dagger K = I"
            )

    @classmethod
    def from_operators(
        cls,
        operators: Sequence,
        label: str = "custom",
        policy: NumericsPolicy = DEFAULT_POLICY
    ) -> 'KrausChannel':
        """Build a user-defined channel; raises ChannelError if incomplete."""
        return cls(operators=tuple(operators), label=label, atol=policy.atol)

    @property
    def n_qubits(self) -> int:
        """Number of qubits each operator acts on."""
        return n_qubits_of(self.operators[0])
