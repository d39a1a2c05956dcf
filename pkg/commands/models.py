"""
Swapurify Command Models

Data structures for parsed command lines, scan/curve specifications and
named presets.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from protocol import Axis, Method, ProtocolConfig


# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VERIFY_FAILED = 3


class SubcommandType(Enum):
    """Subcommands supported by swapurify."""
    SCAN = "scan"        # Enhancement region over a 2-D grid
    CURVE = "curve"      # Concurrence curves against p
    VERIFY = "verify"    # Run verification suites
    RUN = "run"          # Single protocol instance
    HELP = "help"        # Usage text requested
    UNKNOWN = "unknown"  # Unparseable command line


class OutputFormat(Enum):
    """Data file formats."""
    CSV = "csv"
    JSON = "json"


class ParseError(Exception):
    """Exception raised when a command line cannot be parsed."""

    def __init__(self, message: str, suggestion: Optional[str] = None):
        """
        Initialize parse error.

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


@dataclass
class Command:
    """
    Represents a parsed command line.

    Attributes:
        type: Subcommand
        raw_args: Arguments as given (before preset expansion)
        params: Protocol parameters set on the command line, keyed by
            ProtocolConfig field name
        axes: Scan axis names (axis1, axis2)
        range1: Scan range of axis1
        range2: Scan range of axis2
        grid: Scan resolution (axis1 steps, axis2 steps)
        p_range: Curve range of p
        points: Curve sample count
        suite: Verification suite name
        preset: Named preset the command expanded from
        output_format: Requested output format (None = subcommand default)
        out: Output path (None = stdout)
        method: How scan and curve points are evaluated
        tol: Comparison tolerance override
        threads: Worker count override
        config_path: Config file override
        help_text: Usage text (help requests only)
        error: Error message if parsing failed
    """
    type: SubcommandType
    raw_args: List[str]
    params: Dict[str, Any] = field(default_factory=dict)
    axes: Optional[Tuple[str, str]] = None
    range1: Optional[Tuple[float, float]] = None
    range2: Optional[Tuple[float, float]] = None
    grid: Optional[Tuple[int, int]] = None
    p_range: Optional[Tuple[float, float]] = None
    points: Optional[int] = None
    suite: str = "all"
    preset: Optional[str] = None
    output_format: Optional[OutputFormat] = None
    out: Optional[str] = None
    method: Method = Method.CLOSED_FORM
    tol: Optional[float] = None
    threads: Optional[int] = None
    config_path: Optional[str] = None
    help_text: Optional[str] = None
    error: Optional[str] = None

    def is_valid(self) -> bool:
        """Check if command is valid (no parsing errors)."""
        return self.error is None

    def writes_data(self) -> bool:
        """Check if command produces a data file."""
        return self.type in (SubcommandType.SCAN, SubcommandType.CURVE, SubcommandType.RUN)

    def resolved_format(self) -> OutputFormat:
        """Requested format, else JSON for run and CSV otherwise."""
        if self.output_format is not None:
            return self.output_format
        return OutputFormat.JSON if self.type == SubcommandType.RUN else OutputFormat.CSV


@dataclass(frozen=True)
class ScanSpec:
    """
    Fully validated enhancement-region scan.

    Attributes:
        base: Configuration holding family, round count and every
            parameter not on an axis
        axis1: Outer axis (CSV is axis1-major)
        axis2: Inner axis
        method: Closed forms or simulation
        out: Output path (None = stdout)
        output_format: csv or json
    """
    base: ProtocolConfig
    axis1: Axis
    axis2: Axis
    method: Method = Method.CLOSED_FORM
    out: Optional[str] = None
    output_format: OutputFormat = OutputFormat.CSV


@dataclass(frozen=True)
class CurveSpec:
    """
    Fully validated concurrence-curve request.

    Attributes:
        base: Configuration holding family, a or A, and b
        rounds: Rounds to tabulate (phi family)
        p_axis: Sampled damping values
        method: Closed forms or simulation
        out: Output path (None = stdout)
        output_format: csv or json
    """
    base: ProtocolConfig
    rounds: Tuple[int, ...]
    p_axis: Axis
    method: Method = Method.CLOSED_FORM
    out: Optional[str] = None
    output_format: OutputFormat = OutputFormat.CSV


# Unit-interval range used by region presets
UNIT_RANGE = "0.005:0.995"

# Presets are aliases for explicit argument lists; arguments given
# after the preset override it.
PRESETS: Dict[str, Tuple[str, List[str]]] = {
    'fig1': ('scan', ['--family', 'phi', '--axes', 'p,a', '--rounds', '1',
                      '--range1', UNIT_RANGE, '--range2', UNIT_RANGE]),
    'fig2': ('scan', ['--family', 'phi-asym', '--axes', 'a,a_prime', '--p', '0.1',
                      '--range1', UNIT_RANGE, '--range2', UNIT_RANGE]),
    'fig2b': ('scan', ['--family', 'phi-asym', '--axes', 'a,a_prime', '--p', '0.1',
                       '--range1', UNIT_RANGE, '--range2', UNIT_RANGE]),
    'fig2c': ('scan', ['--family', 'phi-asym', '--axes', 'a,a_prime', '--p', '0.01',
                       '--range1', UNIT_RANGE, '--range2', UNIT_RANGE]),
    'fig2d': ('scan', ['--family', 'phi-asym', '--axes', 'a,a_prime', '--p', '0.001',
                       '--range1', UNIT_RANGE, '--range2', UNIT_RANGE]),
    'fig3n2': ('scan', ['--family', 'phi', '--axes', 'p,a', '--rounds', '2', '--b', '0.22',
                        '--weak-policy', 'pp', '--range1', UNIT_RANGE, '--range2', UNIT_RANGE]),
    'fig3n3': ('scan', ['--family', 'phi', '--axes', 'p,a', '--rounds', '3', '--b', '0.22',
                        '--weak-policy', 'pp', '--range1', UNIT_RANGE, '--range2', UNIT_RANGE]),
    'fig4': ('curve', ['--family', 'phi', '--a', '0.3', '--b', '0.22', '--rounds', '3',
                       '--p-range', '0:0.99', '--points', '100']),
    'fig5a': ('scan', ['--family', 'chi', '--axes', 'p,A', '--rounds', '1',
                       '--range1', UNIT_RANGE, '--range2', UNIT_RANGE]),
    'fig5b': ('scan', ['--family', 'chi', '--axes', 'p,A', '--rounds', '1', '--b', '0.25',
                       '--weak-policy', 'pp', '--finish-weak',
                       '--range1', UNIT_RANGE, '--range2', UNIT_RANGE]),
    'fig6': ('curve', ['--family', 'chi', '--A', '0.9', '--b', '0.25',
                       '--p-range', '0:0.99', '--points', '100']),
}

DEFAULT_RESOLUTION = 200
DEFAULT_CURVE_POINTS = 100
