"""
Swapurify Amplitude Damping

Amplitude-damping channel and helpers for applying channels to individual
qubits of a register.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from qmat import DEFAULT_POLICY, NumericsPolicy, embed
from states import DensityMatrix
from .models import ChannelError, KrausChannel

logger = logging.getLogger(__name__)


def amplitude_damping(p: float, policy: NumericsPolicy = DEFAULT_POLICY) -> KrausChannel:
    """
    Amplitude damping with decay probability p.

    K1 = |0><0| + sqrt(1-p)|1><1|,  K2 = sqrt(p)|0><1|

    Raises:
        ChannelError: If p is outside [0, 1]
    """
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ChannelError(f"Damping probability must be in [0, 1], got {p}")

    k1 = np.diag([1.0, np.sqrt(1.0 - p)]).astype(complex)
    k2 = np.zeros((2, 2), dtype=complex)
    k2[0, 1] = np.sqrt(p)
    return KrausChannel(operators=(k1, k2), label=f"AD(p={p:g})", atol=policy.atol)


def identity_channel(policy: NumericsPolicy = DEFAULT_POLICY) -> KrausChannel:
    """Single-qubit identity channel."""
    return KrausChannel(operators=(np.eye(2, dtype=complex),), label="identity", atol=policy.atol)


def apply(channel: KrausChannel, rho: DensityMatrix, target_qubit: int) -> DensityMatrix:
    """
    Apply a single-qubit channel to one qubit of a register.

    Args:
        channel: Single-qubit Kraus channel
        rho: Input state
        target_qubit: Qubit index (0 = most significant)

    Returns:
        Output density matrix

    Raises:
        ChannelError: On a bad target or an incomplete channel
    """
    if channel.n_qubits != 1:
        raise ChannelError(f"Channel {channel.label} acts on {channel.n_qubits} qubits, expected 1")
    if not 0 <= target_qubit < rho.n_qubits:
        raise ChannelError(
            f"Target qubit {target_qubit} out of range for {rho.n_qubits} qubits",
            f"Valid targets are 0..{rho.n_qubits - 1}"
        )
    if channel.completeness_error > rho.atol:
        raise ChannelError(f"Channel {channel.label} is not trace preserving")

    out = np.zeros_like(rho.matrix)
    for k in channel.operators:
        full = embed(k, [target_qubit], rho.n_qubits)
        out = out + full @ rho.matrix @ np.conj(full).T
    out = (out + np.conj(out).T) / 2
    return DensityMatrix(rho.n_qubits, out, atol=rho.atol)


def apply_local_pair(
    channel: KrausChannel,
    rho: DensityMatrix,
    second: Optional[KrausChannel] = None
) -> DensityMatrix:
    """
    Send both qubits of a pair through independent local channels.

    Args:
        channel: Channel on qubit 0 (and on qubit 1 unless `second` is given)
        rho: Two-qubit state
        second: Optional different channel for qubit 1

    Returns:
        Output two-qubit state
    """
    if rho.n_qubits != 2:
        raise ChannelError(f"apply_local_pair needs a two-qubit state, got {rho.n_qubits} qubits")
    out = apply(channel, rho, 0)
    return apply(second or channel, out, 1)


def apply_per_qubit(channels: Sequence[KrausChannel], rho: DensityMatrix) -> DensityMatrix:
    """Apply channels[i] to qubit i for every qubit of the register."""
    if len(channels) != rho.n_qubits:
        raise ChannelError(f"Need {rho.n_qubits} channels, got {len(channels)}")
    out = rho
    for q, channel in enumerate(channels):
        out = apply(channel, out, q)
    return out


def apply_all(channel: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """Apply the same channel to every qubit."""
    return apply_per_qubit([channel] * rho.n_qubits, rho)
