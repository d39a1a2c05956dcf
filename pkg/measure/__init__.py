"""
Swapurify Measurement Module

Bell and weak measurements returning every outcome branch.
"""

from .models import (
    MeasurementError,
    WeakSign,
    MeasurementOutcome,
    WeakMeasurement
)

from .operations import (
    bell_measure,
    weak_measure,
    frame_correct
)

__all__ = [
    'MeasurementError',
    'WeakSign',
    'MeasurementOutcome',
    'WeakMeasurement',
    'bell_measure',
    'weak_measure',
    'frame_correct'
]
