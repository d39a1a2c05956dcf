"""
Swapurify Channels Module

Kraus channels and amplitude-damping noise on selected qubits.
"""

from .models import (
    ChannelError,
    KrausChannel
)

from .damping import (
    amplitude_damping,
    identity_channel,
    apply,
    apply_local_pair,
    apply_per_qubit,
    apply_all
)

__all__ = [
    'ChannelError',
    'KrausChannel',
    'amplitude_damping',
    'identity_channel',
    'apply',
    'apply_local_pair',
    'apply_per_qubit',
    'apply_all'
]
