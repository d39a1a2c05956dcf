"""
Swapurify Measurement Models

Measurement outcomes and the weak-measurement operator pair.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from states import DensityMatrix


class MeasurementError(ValueError):
    """Exception raised for invalid measurement requests."""

    def __init__(self, message: str, suggestion: Optional[str] = None):
        """
        Initialize measurement error.

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


class WeakSign(Enum):
    """Which weak-measurement branch is kept."""
    PLUS = "M+"
    MINUS = "M-"


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    """
    One branch of a measurement.

    Attributes:
        label: 'Phi+', 'Phi-', 'Psi+', 'Psi-', 'M+' or 'M-'
        probability: Branch probability in [0, 1]
        post_state: Normalized post-measurement state, or None when the
            branch has (numerically) zero probability
    """
    label: str
    probability: float
    post_state: Optional[DensityMatrix]

    @property
    def is_valid(self) -> bool:
        """False for the zero-probability sentinel."""
        return self.post_state is not None

    def __str__(self) -> str:
        """String representation."""
        flag = "" if self.is_valid else ", invalid"
        return f"Outcome({self.label}, p={self.probability:.6g}{flag})"


@dataclass(frozen=True)
class WeakMeasurement:
    """
    Weak nondestructive measurement of strength b.

    M+ = sqrt(b)|0><0| + sqrt(1-b)|1><1|
    M- = sqrt(1-b)|0><0| + sqrt(b)|1><1|
    """
    b: float

    def __post_init__(self):
        if not 0.0 < self.b < 1.0:
            raise MeasurementError(
                f"Weak measurement strength must be in (0, 1), got {self.b}",
                "b = 0 or b = 1 turns the weak measurement into a projective one"
            )

    @property
    def plus(self) -> np.ndarray:
        return np.diag([np.sqrt(self.b), np.sqrt(1.0 - self.b)]).astype(complex)

    @property
    def minus(self) -> np.ndarray:
        return np.diag([np.sqrt(1.0 - self.b), np.sqrt(self.b)]).astype(complex)

    def operator(self, sign: WeakSign) -> np.ndarray:
        return self.plus if sign is WeakSign.PLUS else self.minus

    @property
    def operators(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.plus, self.minus
