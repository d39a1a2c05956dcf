"""
Swapurify Command Module

Parse, validate and execute command lines; verification suites.
"""

# Models
from .models import (
    EXIT_OK,
    EXIT_USAGE,
    EXIT_IO,
    EXIT_VERIFY_FAILED,
    SubcommandType,
    OutputFormat,
    Command,
    ParseError,
    ScanSpec,
    CurveSpec,
    PRESETS
)

# Configuration
from .config import (
    DEFAULT_CONFIG,
    config_path_from,
    load_config,
    resolve_threads
)

# Verification
from .verify import (
    SUITES,
    VerifySettings,
    CheckResult,
    SuiteReport,
    run_suites
)

# Parser
from .parser import (
    CommandParser,
    parse_command
)

# Validators
from .validators import (
    CommandValidator,
    ValidationError,
    validate_command
)

# Handlers
from .handlers import (
    CommandHandler,
    cmd_scan,
    cmd_curve,
    cmd_verify,
    cmd_run
)

__all__ = [
    # Models
    'EXIT_OK',
    'EXIT_USAGE',
    'EXIT_IO',
    'EXIT_VERIFY_FAILED',
    'SubcommandType',
    'OutputFormat',
    'Command',
    'ParseError',
    'ScanSpec',
    'CurveSpec',
    'PRESETS',

    # Configuration
    'DEFAULT_CONFIG',
    'config_path_from',
    'load_config',
    'resolve_threads',

    # Verification
    'SUITES',
    'VerifySettings',
    'CheckResult',
    'SuiteReport',
    'run_suites',

    # Parser
    'CommandParser',
    'parse_command',

    # Validators
    'CommandValidator',
    'ValidationError',
    'validate_command',

    # Handlers
    'CommandHandler',
    'cmd_scan',
    'cmd_curve',
    'cmd_verify',
    'cmd_run'
]
