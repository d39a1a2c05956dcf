"""
Swapurify Numerics Policy

Tolerance constants shared by every numeric operation.
"""

from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional


@dataclass(frozen=True)
class NumericsPolicy:
    """
    Immutable tolerance record threaded through numeric calls.

    Attributes:
        atol: Absolute tolerance for density-matrix invariants
        eig_residual: Max residual per eigenpair, relative to max(1, ||M||)
        compare_tol: Margin for strict concurrence comparisons
        clamp_tol: Negative eigenvalues above -clamp_tol are clamped to 0
        imag_tol: Max imaginary part tolerated on a real spectrum
        eig_zero_floor: Eigenvalues below this (relative) are QR noise
        max_qr_iterations: Iteration cap for the shifted QR loop
    """
    atol: float = 1e-10
    eig_residual: float = 1e-9
    compare_tol: float = 1e-9
    clamp_tol: float = 1e-10
    imag_tol: float = 1e-9
    eig_zero_floor: float = 1e-13
    max_qr_iterations: int = 500

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if value <= 0:
                raise ValueError(f"Numerics policy field {f.name} must be positive, got {value}")

    @classmethod
    def from_config(cls, section: Optional[Dict[str, Any]]) -> 'NumericsPolicy':
        """
        Build a policy from the `numerics` section of the config.

        Unknown keys are ignored so older config files keep loading.

        Args:
            section: Mapping of field name to value (may be None)

        Returns:
            NumericsPolicy with overrides applied
        """
        if not section:
            return cls()
        known = {f.name: f.type for f in fields(cls)}
        overrides = {}
        for key, value in section.items():
            if key not in known:
                continue
            overrides[key] = int(value) if key == 'max_qr_iterations' else float(value)
        return replace(cls(), **overrides)

    def with_compare_tol(self, tol: float) -> 'NumericsPolicy':
        """Return a copy with a different comparison tolerance (the --tol flag)."""
        return replace(self, compare_tol=tol)


DEFAULT_POLICY = NumericsPolicy()
