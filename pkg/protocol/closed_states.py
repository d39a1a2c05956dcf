"""
Swapurify Closed-Form States

Analytic density matrices produced at each protocol stage. The
simulator output is compared against these entrywise.
"""

import math

import numpy as np
from scipy.special import expit

from entanglement import log_roundn_ratio, normalization_phi_asym, normalization_phi_round1
from qmat import DEFAULT_POLICY, NumericsPolicy
from states import DensityMatrix
from .models import NoEntanglementError

_KET_00 = np.array([1.0, 0.0, 0.0, 0.0])


def _projector(vec: np.ndarray) -> np.ndarray:
    return np.outer(vec, np.conj(vec))


def _psi(sign: str) -> np.ndarray:
    s = 1.0 if sign == '+' else -1.0
    return np.array([0.0, 1.0, s, 0.0]) / math.sqrt(2.0)


def _normalized(m: np.ndarray, policy: NumericsPolicy) -> DensityMatrix:
    total = float(np.trace(m).real)
    if total <= 0.0:
        raise NoEntanglementError("Closed-form state has zero weight")
    return DensityMatrix(2, m / total, atol=policy.atol)


def damped_phi_state(a: float, p: float, policy: NumericsPolicy = DEFAULT_POLICY) -> DensityMatrix:
    """p|00><00| + (1-p)|phi><phi| for phi = sqrt(a)|01> + sqrt(1-a)|10>."""
    phi = np.array([0.0, math.sqrt(a), math.sqrt(1.0 - a), 0.0])
    return DensityMatrix(2, p * _projector(_KET_00) + (1.0 - p) * _projector(phi), atol=policy.atol)


def damped_chi_state(A: float, p: float, policy: NumericsPolicy = DEFAULT_POLICY) -> DensityMatrix:
    """Damped sqrt(A)|00> + sqrt(1-A)|11> pair."""
    m = np.diag([A + (1.0 - A) * p ** 2, (1.0 - A) * p * (1.0 - p),
                 (1.0 - A) * p * (1.0 - p), (1.0 - A) * (1.0 - p) ** 2]).astype(complex)
    m[0, 3] = m[3, 0] = (1.0 - p) * math.sqrt(A * (1.0 - A))
    return DensityMatrix(2, m, atol=policy.atol)


def swapped_phi_state(a: float, p: float, sign: str = '+',
                      policy: NumericsPolicy = DEFAULT_POLICY) -> DensityMatrix:
    """
    Alice-Charlie state after one swap on the Psi+ ('+') or Psi- ('-')
    outcome: (2p(1-p)a|00><00| + 2(1-p)^2 a(1-a)|Psi><Psi|) / N.
    """
    n = normalization_phi_round1(a, p)
    if n <= 0.0:
        raise NoEntanglementError(f"No Psi branch for a={a}, p={p}")
    m = (2.0 * p * (1.0 - p) * a * _projector(_KET_00)
         + 2.0 * (1.0 - p) ** 2 * a * (1.0 - a) * _projector(_psi(sign)))
    return DensityMatrix(2, m / n, atol=policy.atol)


def swapped_asym_state(a: float, a2: float, p: float, sign: str = '+',
                       policy: NumericsPolicy = DEFAULT_POLICY) -> DensityMatrix:
    """Alice-Charlie state after swapping pairs with weights a and a2."""
    m_norm = normalization_phi_asym(a, a2, p)
    if m_norm <= 0.0:
        raise NoEntanglementError(f"No Psi branch for a={a}, a'={a2}, p={p}")
    s = 1.0 if sign == '+' else -1.0
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = p * (1.0 - p) * (a + a2)
    m[1, 1] = (1.0 - p) ** 2 * a * (1.0 - a2)
    m[2, 2] = (1.0 - p) ** 2 * a2 * (1.0 - a)
    m[1, 2] = m[2, 1] = s * (1.0 - p) ** 2 * math.sqrt(a * a2 * (1.0 - a) * (1.0 - a2))
    return DensityMatrix(2, m / m_norm, atol=policy.atol)


def weak_phi_state(a: float, p: float, b: float, flipped: bool = False,
                   policy: NumericsPolicy = DEFAULT_POLICY) -> DensityMatrix:
    """
    Psi+ swap state after M+ on qubit A (or on qubit C when `flipped`).

    (2p(1-p)ab|00><00| + (1-p)^2 a(1-a)|v><v|) / N' with
    v = sqrt(b)|01> + sqrt(1-b)|10>, or its flipped form.
    """
    if flipped:
        v = np.array([0.0, math.sqrt(1.0 - b), math.sqrt(b), 0.0])
    else:
        v = np.array([0.0, math.sqrt(b), math.sqrt(1.0 - b), 0.0])
    m = (2.0 * p * (1.0 - p) * a * b * _projector(_KET_00)
         + (1.0 - p) ** 2 * a * (1.0 - a) * _projector(v))
    return _normalized(m, policy)


def roundn_phi_state(a: float, p: float, b: float, n: int, sign: str = '+',
                     policy: NumericsPolicy = DEFAULT_POLICY) -> DensityMatrix:
    """
    State after n rounds with both M+ and Psi outcomes:
    (a_n|00><00| + 2b_n|Psi><Psi|) / N_n, built from the ratio a_n / 2b_n.
    """
    if p == 0.0:
        vacuum, coherent = 0.0, 1.0
    else:
        log_ratio = log_roundn_ratio(a, p, b, n)
        vacuum, coherent = float(expit(log_ratio)), float(expit(-log_ratio))
    m = vacuum * _projector(_KET_00) + coherent * _projector(_psi(sign))
    return DensityMatrix(2, m, atol=policy.atol)


def _chi_swap_matrix(A: float, p: float, b: float, sign: str) -> np.ndarray:
    """Unnormalized chi swap state with weak factors (b = None means no weak step)."""
    d0 = A + (1.0 - A) * p ** 2
    d1 = (1.0 - A) * p * (1.0 - p)
    d3 = (1.0 - A) * (1.0 - p) ** 2
    wa, wb = (1.0, 1.0) if b is None else (b, 1.0 - b)
    s = 1.0 if sign == '+' else -1.0
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 2.0 * wa ** 2 * d0 * d1
    m[1, 1] = m[2, 2] = wa * wb * (1.0 - A) * (1.0 - p) ** 2 * (A + 2.0 * (1.0 - A) * p ** 2)
    m[3, 3] = 2.0 * wb ** 2 * d1 * d3
    m[1, 2] = m[2, 1] = s * wa * wb * (1.0 - A) * A * (1.0 - p) ** 2
    return m


def swapped_chi_state(A: float, p: float, sign: str = '+',
                      policy: NumericsPolicy = DEFAULT_POLICY) -> DensityMatrix:
    """Alice-Charlie state after swapping two damped chi pairs (Psi outcome)."""
    return _normalized(_chi_swap_matrix(A, p, None, sign), policy)


def weak_chi_state(A: float, p: float, b: float, sign: str = '+',
                   policy: NumericsPolicy = DEFAULT_POLICY) -> DensityMatrix:
    """
    Chi swap state after M+ on both A and C.

    Populations pick up b^2, b(1-b), b(1-b), (1-b)^2 and the |01><10|
    coherence picks up b(1-b).
    """
    return _normalized(_chi_swap_matrix(A, p, b, sign), policy)
