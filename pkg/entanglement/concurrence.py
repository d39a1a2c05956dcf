"""
Swapurify Concurrence

Wootters concurrence from the spectrum of rho * rho~, where
rho~ = (Y x Y) rho* (Y x Y), plus the fully entangled fraction.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from qmat import DEFAULT_POLICY, NumericsPolicy, eigenvalues, hermitian_eigenvalues, kron
from states import DensityMatrix

logger = logging.getLogger(__name__)

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SPIN_FLIP = kron(SIGMA_Y, SIGMA_Y)

_SQRT_HALF = 1.0 / np.sqrt(2.0)

# Columns: Phi+, i Phi-, i Psi+, Psi-
MAGIC_BASIS = np.array([
    [1, 1j, 0, 0],
    [0, 0, 1j, 1],
    [0, 0, 1j, -1],
    [1, -1j, 0, 0],
], dtype=complex) * _SQRT_HALF


class ConcurrenceError(ValueError):
    """Exception raised when a concurrence cannot be computed."""

    def __init__(self, message: str, suggestion: Optional[str] = None):
        """
        Initialize concurrence error.

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


@dataclass(frozen=True)
class ConcurrenceReport:
    """
    Concurrence and the spectrum it came from.

    Attributes:
        value: Concurrence in [0, 1]
        lambdas: Eigenvalues of rho * rho~, descending, nonnegative
        clamped: True if a slightly negative eigenvalue was clamped to 0
    """
    value: float
    lambdas: Tuple[float, float, float, float]
    clamped: bool = False

    def recompute(self) -> float:
        """max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) from lambdas."""
        roots = np.sqrt(self.lambdas)
        return float(max(0.0, roots[0] - roots[1:].sum()))


def spin_flip(rho: DensityMatrix) -> np.ndarray:
    """(Y x Y) rho* (Y x Y)."""
    return SPIN_FLIP @ np.conj(rho.matrix) @ SPIN_FLIP


def concurrence(rho: DensityMatrix, policy: NumericsPolicy = DEFAULT_POLICY) -> ConcurrenceReport:
    """
    Wootters concurrence of a two-qubit state.

    Eigenvalues within eig_zero_floor of zero are QR noise and are set to
    0. Remaining negative values down to -clamp_tol are clamped.

    Args:
        rho: Two-qubit density matrix
        policy: Tolerances

    Returns:
        ConcurrenceReport

    Raises:
        ConcurrenceError: For non-two-qubit input, a complex spectrum, or
            an eigenvalue below -clamp_tol
    """
    if not isinstance(rho, DensityMatrix) or rho.n_qubits != 2:
        raise ConcurrenceError("Concurrence needs a two-qubit density matrix")

    product = rho.matrix @ spin_flip(rho)
    spectrum = eigenvalues(product, policy)
    if spectrum.max_imag > policy.imag_tol:
        raise ConcurrenceError(
            f"Spectrum of rho*rho~ has imaginary part {spectrum.max_imag:.3e}",
            "The input is probably not a valid density matrix"
        )

    floor = policy.eig_zero_floor * max(1.0, float(np.linalg.norm(product, 2)))
    clamped = False
    lambdas = []
    for value in spectrum.real_parts():
        if abs(value) <= floor:
            value = 0.0
        elif value < 0.0:
            if value < -policy.clamp_tol:
                raise ConcurrenceError(f"Eigenvalue {value:.3e} of rho*rho~ is negative beyond tolerance")
            logger.warning(f"Clamping eigenvalue {value:.3e} of rho*rho~ to zero")
            value = 0.0
            clamped = True
        lambdas.append(value)
    lambdas.sort(reverse=True)

    roots = np.sqrt(lambdas)
    raw = float(roots[0] - roots[1:].sum())
    if raw > 1.0 + policy.eig_residual:
        raise ConcurrenceError(f"Concurrence {raw:.12g} exceeds 1")
    value = min(max(raw, 0.0), 1.0)
    return ConcurrenceReport(value=value, lambdas=tuple(lambdas), clamped=clamped)


def concurrence_value(rho: DensityMatrix, policy: NumericsPolicy = DEFAULT_POLICY) -> float:
    """Shorthand for concurrence(rho).value."""
    return concurrence(rho, policy).value


def singlet_fraction(rho: DensityMatrix) -> float:
    """
    Fully entangled fraction: the largest overlap with any maximally
    entangled two-qubit state.

    Equals the top eigenvalue of Re(rho) written in the magic basis.
    """
    if rho.n_qubits != 2:
        raise ConcurrenceError("Singlet fraction needs a two-qubit density matrix")
    in_magic = np.conj(MAGIC_BASIS).T @ rho.matrix @ MAGIC_BASIS
    return float(hermitian_eigenvalues(in_magic.real)[0])


def x_state_concurrence(m: np.ndarray) -> float:
    """
    Concurrence of a two-qubit X state read from its entries.

    C = 2 max(0, |r(01,10)| - sqrt(r00 r11), |r(00,11)| - sqrt(r01 r10))
    """
    m = np.asarray(m)
    diag = np.real(np.diag(m))
    first = abs(m[1, 2]) - np.sqrt(max(diag[0] * diag[3], 0.0))
    second = abs(m[0, 3]) - np.sqrt(max(diag[1] * diag[2], 0.0))
    return float(2.0 * max(0.0, first, second))
