"""
Swapurify Matrix Operations

Dense complex matrices over qubit registers.

Qubit 0 is the leftmost tensor factor and the most significant bit of a
basis index, so |q0 q1 ... q(n-1)> sits at index q0*2^(n-1) + ... + q(n-1).
"""

import logging
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, NonFiniteError

logger = logging.getLogger(__name__)

# 4 qubits is the largest register the protocol builds (A, B, B', C)
MAX_QUBITS = 4
MAX_DIMENSION = 2 ** MAX_QUBITS

ComplexMatrix = np.ndarray


def as_matrix(data) -> ComplexMatrix:
    """
    Convert input to a read-only complex128 matrix.

    Args:
        data: Array-like with two dimensions

    Returns:
        Read-only complex matrix (a fresh copy)

    Raises:
        DimensionError: If the input is not two-dimensional or is empty
        NonFiniteError: If any entry is NaN or Inf
    """
    m = np.array(data, dtype=np.complex128, copy=True)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise DimensionError(f"Expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteError("Matrix contains NaN or Inf entries")
    m.setflags(write=False)
    return m


def n_qubits_of(m: ComplexMatrix) -> int:
    """
    Number of qubits a square 2^n x 2^n matrix acts on.

    Raises:
        DimensionError: If the matrix isn't square with power-of-two size
    """
    rows, cols = m.shape
    if rows != cols:
        raise DimensionError(f"Expected a square matrix, got {rows}x{cols}")
    n = rows.bit_length() - 1
    if 2 ** n != rows:
        raise DimensionError(f"Dimension {rows} is not a power of two")
    return n


def identity(n_qubits: int) -> ComplexMatrix:
    """Identity on n qubits."""
    return as_matrix(np.eye(2 ** n_qubits))


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """
    Kronecker product with standard ordering.

    kron(A, B)[i*rb + k, j*cb + l] = A[i, j] * B[k, l]
    """
    return as_matrix(np.kron(a, b))


def kron_all(factors: Iterable[ComplexMatrix]) -> ComplexMatrix:
    """Kronecker product of a sequence of matrices, left to right."""
    return reduce(kron, factors)


def dagger(m: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose."""
    return as_matrix(np.conj(m).T)


def is_hermitian(m: ComplexMatrix, atol: float) -> bool:
    """True when max |M - M^dagger| <= atol."""
    rows, cols = m.shape
    if rows != cols:
        return False
    return bool(np.max(np.abs(m - np.conj(m).T)) <= atol)


def _check_indices(indices: Sequence[int], n_qubits: int, what: str) -> None:
    if len(set(indices)) != len(indices):
        raise DimensionError(f"Duplicate qubit index in {what}: {list(indices)}")
    for q in indices:
        if not 0 <= q < n_qubits:
            raise DimensionError(
                f"Qubit index {q} out of range for {n_qubits} qubits",
                f"Valid indices are 0..{n_qubits - 1}"
            )


def embed(op: ComplexMatrix, targets: Sequence[int], n_qubits: int) -> ComplexMatrix:
    """
    Lift a k-qubit operator onto an n-qubit register.

    Args:
        op: 2^k x 2^k operator
        targets: Register positions for the operator's qubits, in the
            operator's own qubit order
        n_qubits: Register size

    Returns:
        2^n x 2^n operator acting as `op` on `targets` and identity elsewhere

    Raises:
        DimensionError: If indices are invalid or sizes don't match
    """
    targets = list(targets)
    k = n_qubits_of(op)
    if k != len(targets):
        raise DimensionError(f"Operator acts on {k} qubits but {len(targets)} targets were given")
    if n_qubits > MAX_QUBITS:
        raise DimensionError(f"Registers above {MAX_QUBITS} qubits are not supported")
    _check_indices(targets, n_qubits, "targets")

    rest = [q for q in range(n_qubits) if q not in targets]
    order = targets + rest
    full = np.kron(op, np.eye(2 ** len(rest)))
    if order == list(range(n_qubits)):
        return as_matrix(full)

    tensor = full.reshape((2,) * (2 * n_qubits))
    perm = [order.index(q) for q in range(n_qubits)]
    tensor = tensor.transpose(perm + [n_qubits + p for p in perm])
    return as_matrix(tensor.reshape(2 ** n_qubits, 2 ** n_qubits))


def partial_trace(m: ComplexMatrix, n_qubits: int, keep: Iterable[int]) -> ComplexMatrix:
    """
    Trace out every qubit not listed in `keep`.

    Kept qubits stay in their original relative order whatever order
    `keep` lists them in.

    Args:
        m: 2^n x 2^n matrix
        n_qubits: Register size n
        keep: Qubits to keep

    Returns:
        Reduced matrix over the kept qubits

    Raises:
        DimensionError: On size mismatch, bad indices, or an empty keep set
    """
    keep = list(keep)
    if not keep:
        raise DimensionError("Partial trace needs at least one qubit to keep")
    if m.shape != (2 ** n_qubits, 2 ** n_qubits):
        raise DimensionError(
            f"Matrix shape {m.shape} does not match {n_qubits} qubits"
        )
    _check_indices(keep, n_qubits, "keep")

    keep = sorted(keep)
    traced = [q for q in range(n_qubits) if q not in keep]
    if not traced:
        return as_matrix(m)

    dk = 2 ** len(keep)
    dt = 2 ** len(traced)
    order = keep + traced
    tensor = np.asarray(m).reshape((2,) * (2 * n_qubits))
    tensor = tensor.transpose(order + [n_qubits + q for q in order])
    reduced = np.trace(tensor.reshape(dk, dt, dk, dt), axis1=1, axis2=3)
    return as_matrix(reduced)
