"""
Swapurify Eigenvalue Solver

Hessenberg reduction followed by shifted QR iteration for general complex
matrices, with a residual audit on every returned eigenvalue.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.linalg import hessenberg

from .errors import DimensionError, EigenConvergenceError
from .matrix import MAX_DIMENSION, ComplexMatrix, as_matrix
from .numerics import DEFAULT_POLICY, NumericsPolicy

logger = logging.getLogger(__name__)

# Take an exceptional shift after this many iterations without deflation
EXCEPTIONAL_SHIFT_PERIOD = 10


@dataclass(frozen=True)
class Spectrum:
    """
    Eigenvalues of a square matrix.

    Attributes:
        eigenvalues: Sorted by descending real part
        residuals: Smallest singular value of (M - lambda I), per eigenvalue
        iterations: QR steps spent
    """
    eigenvalues: Tuple[complex, ...]
    residuals: Tuple[float, ...]
    iterations: int

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)

    @property
    def max_imag(self) -> float:
        """Largest |Im(lambda)| in the spectrum."""
        return max(abs(v.imag) for v in self.eigenvalues)

    def real_parts(self) -> List[float]:
        """Real parts in spectrum order."""
        return [v.real for v in self.eigenvalues]


def _wilkinson_shift(block: np.ndarray) -> complex:
    """Eigenvalue of the trailing 2x2 block closest to its bottom-right entry."""
    a, b = block[0, 0], block[0, 1]
    c, d = block[1, 0], block[1, 1]
    half_tr = (a + d) / 2
    disc = np.sqrt(((a - d) / 2) ** 2 + b * c)
    mu1 = half_tr + disc
    mu2 = half_tr - disc
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def _shifted_qr(h: np.ndarray, policy: NumericsPolicy) -> Tuple[List[complex], int]:
    """
    Run shifted QR on an upper Hessenberg matrix, deflating from the bottom.

    Returns:
        (unsorted eigenvalues, iteration count)

    Raises:
        EigenConvergenceError: If the iteration cap is reached
    """
    h = np.array(h, dtype=np.complex128)
    eps = np.finfo(float).eps
    found: List[complex] = []
    active = h.shape[0]
    iterations = 0
    stalled = 0

    while active > 1:
        sub = abs(h[active - 1, active - 2])
        local = abs(h[active - 1, active - 1]) + abs(h[active - 2, active - 2])
        floor = eps * np.linalg.norm(h[:active, :active])
        if sub <= eps * local or sub <= floor:
            found.append(complex(h[active - 1, active - 1]))
            active -= 1
            stalled = 0
            continue

        if iterations >= policy.max_qr_iterations:
            raise EigenConvergenceError(
                f"Shifted QR did not converge after {iterations} iterations",
                f"{active} eigenvalues still coupled"
            )

        if stalled and stalled % EXCEPTIONAL_SHIFT_PERIOD == 0:
            mu = h[active - 1, active - 1] + 1.5 * sub
            logger.debug(f"Exceptional shift at iteration {iterations}")
        else:
            mu = _wilkinson_shift(h[active - 2:active, active - 2:active])

        shift = mu * np.eye(active)
        q, r = np.linalg.qr(h[:active, :active] - shift)
        h[:active, :active] = r @ q + shift
        iterations += 1
        stalled += 1

    found.append(complex(h[0, 0]))
    return found, iterations


def _residual(m: np.ndarray, value: complex) -> float:
    """Smallest singular value of (M - value I)."""
    shifted = m - value * np.eye(m.shape[0])
    return float(np.linalg.svd(shifted, compute_uv=False)[-1])


def eigenvalues(m, policy: NumericsPolicy = DEFAULT_POLICY) -> Spectrum:
    """
    All eigenvalues of a square complex matrix.

    Args:
        m: Square matrix, dimension at most 16
        policy: Tolerances (residual bound and iteration cap)

    Returns:
        Spectrum sorted by descending real part

    Raises:
        DimensionError: If the matrix is not square or too large
        EigenConvergenceError: If QR fails to converge or a residual
            exceeds eig_residual * max(1, ||M||)
    """
    m = as_matrix(m)
    rows, cols = m.shape
    if rows != cols:
        raise DimensionError(f"Eigenvalues need a square matrix, got {rows}x{cols}")
    if rows > MAX_DIMENSION:
        raise DimensionError(
            f"Matrix dimension {rows} exceeds {MAX_DIMENSION}",
            "Only registers up to 4 qubits are supported"
        )

    if rows == 1:
        return Spectrum((complex(m[0, 0]),), (0.0,), 0)

    h = hessenberg(np.array(m))
    values, iterations = _shifted_qr(h, policy)

    work = np.array(m)
    scale = max(1.0, float(np.linalg.norm(work, 2)))
    residuals = [_residual(work, v) for v in values]
    worst = max(residuals)
    if worst > policy.eig_residual * scale:
        raise EigenConvergenceError(
            f"Eigenvalue residual {worst:.3e} exceeds {policy.eig_residual:.1e}",
            "The matrix may be badly conditioned"
        )

    order = sorted(range(rows), key=lambda i: (-values[i].real, -values[i].imag))
    logger.debug(f"Spectrum of {rows}x{rows} matrix in {iterations} QR steps")
    return Spectrum(
        eigenvalues=tuple(values[i] for i in order),
        residuals=tuple(residuals[i] for i in order),
        iterations=iterations,
    )


def hermitian_eigenvalues(m) -> np.ndarray:
    """
    Real eigenvalues of a Hermitian matrix, descending.

    Only the lower triangle is read; callers check Hermiticity first.
    """
    values = np.linalg.eigvalsh(np.asarray(m))
    return values[::-1]
