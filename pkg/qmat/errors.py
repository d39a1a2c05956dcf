"""
Swapurify Matrix Errors

Exceptions raised by the dense matrix kernel.
"""

from typing import Optional


class MatrixError(ValueError):
    """Base exception for matrix kernel failures."""

    def __init__(self, message: str, suggestion: Optional[str] = None):
        """
        Initialize matrix error.

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


class DimensionError(MatrixError):
    """Raised when matrix shapes or qubit indices don't fit together."""


class NonFiniteError(MatrixError):
    """Raised when a matrix contains NaN or Inf entries."""


class EigenConvergenceError(MatrixError):
    """Raised when the QR iteration fails to converge or residuals are too large."""
