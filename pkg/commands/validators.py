"""
Swapurify Command Validators

Turn parsed commands into validated protocol configurations and scan or
curve specifications.
"""

import logging
from dataclasses import replace
from typing import Any, Dict, Optional

from protocol import (
    ACCEPT_SETS,
    Axis,
    ConfigError,
    Family,
    ProtocolConfig,
    WeakPolicy,
)
from .models import (
    Command,
    CurveSpec,
    DEFAULT_CURVE_POINTS,
    DEFAULT_RESOLUTION,
    ScanSpec,
    SubcommandType,
)

logger = logging.getLogger(__name__)


class ValidationError(Exception):
    """Exception raised when command validation fails."""

    def __init__(self, message: str, suggestion: Optional[str] = None):
        """
        Initialize validation error.

        Args:
            message: Error message
            suggestion: Optional suggestion for user
        """
        self.message = message
        self.suggestion = suggestion
        super().__init__(message)

    def __str__(self) -> str:
        """String representation."""
        if self.suggestion:
            return f"{self.message}\n{self.suggestion}"
        return self.message


class CommandValidator:
    """
    Validate commands and build their specifications.

    Checks:
        - Parameters lie in their domains
        - Scan axes belong to the chosen family
        - Weak strength is usable wherever a weak step happens
    """

    # Axes each family can vary
    FAMILY_AXES = {
        Family.PHI: {'a', 'p', 'b'},
        Family.PHI_ASYM: {'a', 'a_prime', 'p'},
        Family.CHI: {'A', 'p', 'b'},
    }

    DEFAULT_AXES = {
        Family.PHI: ('p', 'a'),
        Family.PHI_ASYM: ('a', 'a_prime'),
        Family.CHI: ('p', 'A'),
    }

    DEFAULT_RANGE = (0.005, 0.995)
    DEFAULT_P_RANGE = (0.0, 0.99)

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """
        Initialize validator.

        Args:
            config: Loaded configuration (for default resolution and points)
        """
        self.config = config or {}

    def validate(self, command: Command) -> None:
        """
        Validate command.

        Args:
            command: Command to validate

        Raises:
            ValidationError: If command is invalid
        """
        if command.type == SubcommandType.SCAN:
            self.build_scan_spec(command)
        elif command.type == SubcommandType.CURVE:
            self.build_curve_spec(command)
        elif command.type == SubcommandType.RUN:
            self.build_protocol_config(command.params)

    def build_protocol_config(self, params: Dict[str, Any]) -> ProtocolConfig:
        """
        Build a ProtocolConfig from command-line parameters.

        Raises:
            ValidationError: For unknown names or out-of-range values
        """
        kwargs = dict(params)
        try:
            if 'family' in kwargs:
                kwargs['family'] = Family(kwargs['family'])
            if 'weak_policy' in kwargs:
                kwargs['weak_policy'] = WeakPolicy(kwargs['weak_policy'])
            if 'accepted_bell' in kwargs:
                kwargs['accepted_bell'] = ACCEPT_SETS[kwargs['accepted_bell']]
        except (ValueError, KeyError) as e:
            raise ValidationError(f"Invalid parameter: {e}")

        family = kwargs.get('family', Family.PHI)
        if family is Family.PHI_ASYM and kwargs.get('a_prime') is None:
            kwargs['a_prime'] = kwargs.get('a', ProtocolConfig.a)
            logger.info(f"No a' given; using a' = a = {kwargs['a_prime']}")

        try:
            return ProtocolConfig(**kwargs)
        except ConfigError as e:
            raise ValidationError(e.message, e.suggestion)

    def build_scan_spec(self, command: Command) -> ScanSpec:
        """
        Build a ScanSpec.

        Raises:
            ValidationError: If the scan is invalid
        """
        base = self.build_protocol_config(command.params)
        axes = command.axes or self.DEFAULT_AXES[base.family]
        allowed = self.FAMILY_AXES[base.family]
        for name in axes:
            if name not in allowed:
                raise ValidationError(
                    f"Axis {name} does not apply to family {base.family.value}",
                    f"Use axes from: {', '.join(sorted(allowed))}"
                )
        if 'b' in axes and not base.needs_weak:
            raise ValidationError("Axis b needs a weak step", "Use --rounds >= 2 or --finish-weak")

        resolution = int(self.config.get('scan', {}).get('resolution', DEFAULT_RESOLUTION))
        steps = command.grid or (resolution, resolution)
        ranges = (command.range1 or self.DEFAULT_RANGE, command.range2 or self.DEFAULT_RANGE)

        for name, (lo, hi) in zip(axes, ranges):
            if name == 'b' and not (0.0 < lo and hi < 1.0):
                raise ValidationError(f"Range of b must lie inside (0, 1), got {lo}:{hi}")
            if not (0.0 <= lo and hi <= 1.0):
                raise ValidationError(f"Range of {name} must lie inside [0, 1], got {lo}:{hi}")

        try:
            axis1 = Axis(axes[0], ranges[0][0], ranges[0][1], steps[0])
            axis2 = Axis(axes[1], ranges[1][0], ranges[1][1], steps[1])
            replace(base, **{axis1.name: axis1.lo, axis2.name: axis2.lo})
        except ConfigError as e:
            raise ValidationError(e.message, e.suggestion)

        return ScanSpec(
            base=base,
            axis1=axis1,
            axis2=axis2,
            method=command.method,
            out=command.out,
            output_format=command.resolved_format(),
        )

    def build_curve_spec(self, command: Command) -> CurveSpec:
        """
        Build a CurveSpec.

        Raises:
            ValidationError: If the curve request is invalid
        """
        base = self.build_protocol_config(command.params)
        if base.family is Family.PHI_ASYM:
            raise ValidationError("Curves are available for the phi and chi families")
        if not 0.0 < base.b < 1.0:
            raise ValidationError(f"b must be in (0, 1), got {base.b}")

        lo, hi = command.p_range or self.DEFAULT_P_RANGE
        if not (0.0 <= lo and hi < 1.0):
            raise ValidationError(f"p range must lie inside [0, 1), got {lo}:{hi}", "p = 1 leaves no entanglement")
        points = command.points or int(self.config.get('scan', {}).get('curve_points', DEFAULT_CURVE_POINTS))

        try:
            p_axis = Axis('p', lo, hi, points)
        except ConfigError as e:
            raise ValidationError(e.message, e.suggestion)

        rounds = tuple(range(1, base.rounds + 1)) if base.family is Family.PHI else ()
        return CurveSpec(
            base=base,
            rounds=rounds,
            p_axis=p_axis,
            method=command.method,
            out=command.out,
            output_format=command.resolved_format(),
        )


def validate_command(command: Command, config: Optional[Dict[str, Any]] = None) -> None:
    """
    Validate command (convenience function).

    Args:
        command: Command to validate
        config: Loaded configuration (optional)

    Raises:
        ValidationError: If command is invalid
    """
    validator = CommandValidator(config)
    validator.validate(command)
