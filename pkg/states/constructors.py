"""
Swapurify State Constructors

The two-qubit pair families, the Bell basis, and density-matrix builders.
All amplitudes are real and nonnegative except the Bell minus signs.
"""

from enum import Enum
from typing import Sequence, Union

import numpy as np

from qmat import DEFAULT_POLICY, NumericsPolicy, kron_all
from .models import DensityMatrix, PureState, StateError


class BellLabel(Enum):
    """Bell basis labels."""
    PHI_PLUS = "Phi+"
    PHI_MINUS = "Phi-"
    PSI_PLUS = "Psi+"
    PSI_MINUS = "Psi-"

    @property
    def is_psi(self) -> bool:
        return self in (BellLabel.PSI_PLUS, BellLabel.PSI_MINUS)

    @property
    def is_minus(self) -> bool:
        return self in (BellLabel.PHI_MINUS, BellLabel.PSI_MINUS)

    @classmethod
    def parse(cls, label: Union[str, 'BellLabel']) -> 'BellLabel':
        """Accept an enum member or its text value."""
        if isinstance(label, cls):
            return label
        for member in cls:
            if member.value == label:
                return member
        raise StateError(
            f"Unknown Bell label: {label!r}",
            f"Use one of {', '.join(m.value for m in cls)}"
        )


PSI_LABELS = frozenset({BellLabel.PSI_PLUS, BellLabel.PSI_MINUS})
PHI_LABELS = frozenset({BellLabel.PHI_PLUS, BellLabel.PHI_MINUS})
ALL_LABELS = PSI_LABELS | PHI_LABELS

_SQRT_HALF = 1.0 / np.sqrt(2.0)

_BELL_AMPLITUDES = {
    BellLabel.PHI_PLUS: (_SQRT_HALF, 0.0, 0.0, _SQRT_HALF),
    BellLabel.PHI_MINUS: (_SQRT_HALF, 0.0, 0.0, -_SQRT_HALF),
    BellLabel.PSI_PLUS: (0.0, _SQRT_HALF, _SQRT_HALF, 0.0),
    BellLabel.PSI_MINUS: (0.0, _SQRT_HALF, -_SQRT_HALF, 0.0),
}


def _check_weight(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise StateError(f"{name} must be in [0, 1], got {value}")
    return value


def phi_pair(a: float) -> PureState:
    """sqrt(a)|01> + sqrt(1-a)|10>."""
    a = _check_weight("a", a)
    return PureState(2, np.array([0.0, np.sqrt(a), np.sqrt(1.0 - a), 0.0]))


def phi_pair_flipped(a: float) -> PureState:
    """sqrt(a)|10> + sqrt(1-a)|01>, the qubit-swapped phi pair."""
    a = _check_weight("a", a)
    return PureState(2, np.array([0.0, np.sqrt(1.0 - a), np.sqrt(a), 0.0]))


def chi_pair(A: float) -> PureState:
    """sqrt(A)|00> + sqrt(1-A)|11>."""
    A = _check_weight("A", A)
    return PureState(2, np.array([np.sqrt(A), 0.0, 0.0, np.sqrt(1.0 - A)]))


def flip_pair(state: PureState) -> PureState:
    """Apply X (x) X to a two-qubit state (|01> <-> |10>, |00> <-> |11>)."""
    if state.n_qubits != 2:
        raise StateError("flip_pair needs a two-qubit state")
    return PureState(2, state.amplitudes[::-1], atol=state.atol)


def bell(label: Union[str, BellLabel]) -> PureState:
    """Bell vector, minus sign on the second term."""
    return PureState(2, np.array(_BELL_AMPLITUDES[BellLabel.parse(label)]))


def to_density(state: PureState, policy: NumericsPolicy = DEFAULT_POLICY) -> DensityMatrix:
    """Projector |s><s|."""
    amps = state.amplitudes
    return DensityMatrix(state.n_qubits, np.outer(amps, np.conj(amps)), atol=policy.atol)


def product_density(*rhos: DensityMatrix) -> DensityMatrix:
    """Tensor product of density matrices, registers concatenated in order."""
    if not rhos:
        raise StateError("product_density needs at least one state")
    n = sum(r.n_qubits for r in rhos)
    return DensityMatrix(n, kron_all(r.matrix for r in rhos), atol=rhos[0].atol)


def maximally_mixed(n_qubits: int, policy: NumericsPolicy = DEFAULT_POLICY) -> DensityMatrix:
    """I / 2^n."""
    dim = 2 ** n_qubits
    return DensityMatrix(n_qubits, np.eye(dim) / dim, atol=policy.atol)


def basis_density(bits: str, policy: NumericsPolicy = DEFAULT_POLICY) -> DensityMatrix:
    """|bits><bits| for a computational basis label such as '01'."""
    if not bits or any(c not in '01' for c in bits):
        raise StateError(f"Invalid basis label: {bits!r}")
    m = np.zeros((2 ** len(bits),) * 2)
    m[int(bits, 2), int(bits, 2)] = 1.0
    return DensityMatrix(len(bits), m, atol=policy.atol)


def diagonal_density(weights: Sequence[float], policy: NumericsPolicy = DEFAULT_POLICY) -> DensityMatrix:
    """Density matrix with the given diagonal and no coherences."""
    return DensityMatrix.from_matrix(np.diag(np.asarray(weights, dtype=float)), policy)
