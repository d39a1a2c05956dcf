"""
Swapurify Command Handlers

Execute parsed and validated commands.
"""

import logging
import sys
from typing import Any, Dict, List, Optional, TextIO

from formatting import (
    curve_to_csv,
    curve_to_json,
    format_error_message,
    format_info_message,
    format_main_menu,
    format_preset_list,
    format_status_line,
    format_verify_summary,
    run_to_csv,
    run_to_json,
    scan_to_csv,
    scan_to_json,
    write_output,
)
from protocol import (
    Family,
    ProtocolConfig,
    ProtocolError,
    chi_curve,
    enhancement_region,
    phi_curve,
    run_protocol,
)
from qmat import DEFAULT_POLICY, NumericsPolicy
from .config import resolve_threads
from .models import (
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    PRESETS,
    Command,
    CurveSpec,
    OutputFormat,
    ScanSpec,
    SubcommandType,
)
from .validators import CommandValidator, ValidationError
from .verify import VerifySettings, run_suites

logger = logging.getLogger(__name__)


def _print_lines(lines: List[str], stream: TextIO) -> None:
    for line in lines:
        print(line, file=stream)


def _write(text: str, out: Optional[str]) -> int:
    """Write a data file, mapping I/O failures to EXIT_IO."""
    try:
        write_output(text, out)
    except OSError as e:
        _print_lines(format_error_message(f"Cannot write {out}: {e.strerror or e}"), sys.stderr)
        return EXIT_IO
    if out not in (None, '-'):
        logger.info(f"Wrote {out}")
    return EXIT_OK


def cmd_scan(
    spec: ScanSpec,
    policy: NumericsPolicy = DEFAULT_POLICY,
    threads: Optional[int] = None
) -> int:
    """
    Scan an enhancement region and write it out.

    Returns:
        EXIT_OK, or EXIT_IO if the output cannot be written
    """
    grid = enhancement_region(spec.base, spec.axis1, spec.axis2, spec.method, threads, policy)
    if spec.output_format == OutputFormat.JSON:
        text = scan_to_json(grid, spec.base)
    else:
        text = scan_to_csv(grid)
    enhanced = int(grid.mask().sum())
    logger.info(format_status_line([
        ("enhanced", f"{enhanced}/{spec.axis1.steps * spec.axis2.steps}"),
        ("axes", f"{spec.axis1.name},{spec.axis2.name}"),
        ("method", spec.method.value),
    ]))
    return _write(text, spec.out)


def cmd_curve(spec: CurveSpec, policy: NumericsPolicy = DEFAULT_POLICY) -> int:
    """
    Tabulate concurrence curves against p and write them out.

    Returns:
        EXIT_OK, or EXIT_IO if the output cannot be written
    """
    p_values = spec.p_axis.values()
    base = spec.base
    if base.family is Family.CHI:
        curve = chi_curve(base.A, base.b, p_values, spec.method, policy)
    else:
        curve = phi_curve(base.a, base.b, spec.rounds, p_values, spec.method, policy)
    text = curve_to_json(curve) if spec.output_format == OutputFormat.JSON else curve_to_csv(curve)
    return _write(text, spec.out)


def cmd_verify(
    suite: str,
    settings: VerifySettings,
    policy: NumericsPolicy = DEFAULT_POLICY,
    out: Optional[str] = None
) -> int:
    """
    Run verification suites and print the report.

    Returns:
        EXIT_OK when every check passes, EXIT_VERIFY_FAILED otherwise
        (EXIT_IO if the report cannot be written)
    """
    reports = run_suites([suite], settings, policy)
    text = '\n'.join(format_verify_summary(reports)) + '\n'
    status = _write(text, out)
    if status != EXIT_OK:
        return status
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED


def cmd_run(
    cfg: ProtocolConfig,
    policy: NumericsPolicy = DEFAULT_POLICY,
    output_format: OutputFormat = OutputFormat.JSON,
    out: Optional[str] = None
) -> int:
    """
    Run one protocol instance and write per-round records.

    Returns:
        EXIT_OK, or EXIT_IO if the output cannot be written
    """
    results = run_protocol(cfg, policy)
    if output_format == OutputFormat.CSV:
        text = run_to_csv(results)
    else:
        text = run_to_json(cfg, results)
    return _write(text, out)


class CommandHandler:
    """
    Execute commands.

    Handles:
        - Region scans and curves (data files)
        - Verification suites (report, exit 3 on failure)
        - Single protocol runs
        - Help and usage errors
    """

    def __init__(self, config: Dict[str, Any]):
        """
        Initialize handler.

        Args:
            config: Loaded configuration (see commands.config.DEFAULT_CONFIG)
        """
        self.config = config
        self.validator = CommandValidator(config)
        self.policy = NumericsPolicy.from_config(config.get('numerics'))
        self.verify_settings = VerifySettings.from_config(config.get('verify'))

    def policy_for(self, command: Command) -> NumericsPolicy:
        """Configured policy with the --tol override applied."""
        if command.tol is not None:
            return self.policy.with_compare_tol(command.tol)
        return self.policy

    def handle(self, command: Command) -> int:
        """
        Execute command and return its exit code.

        Args:
            command: Parsed command

        Returns:
            Process exit code
        """
        if not command.is_valid():
            message, _, hint = command.error.partition('\n')
            _print_lines(format_error_message(message, hint or None), sys.stderr)
            return EXIT_USAGE

        if command.type == SubcommandType.HELP:
            sys.stdout.write(command.help_text or '')
            _print_lines([''] + format_main_menu() + [''] + format_preset_list(PRESETS), sys.stdout)
            return EXIT_OK

        try:
            policy = self.policy_for(command)
            if command.preset:
                logger.info(f"Using preset {command.preset}")

            if command.type == SubcommandType.SCAN:
                spec = self.validator.build_scan_spec(command)
                threads = resolve_threads(command.threads, self.config)
                return cmd_scan(spec, policy, threads)

            elif command.type == SubcommandType.CURVE:
                return cmd_curve(self.validator.build_curve_spec(command), policy)

            elif command.type == SubcommandType.VERIFY:
                return cmd_verify(command.suite, self.verify_settings, policy, command.out)

            elif command.type == SubcommandType.RUN:
                cfg = self.validator.build_protocol_config(command.params)
                return cmd_run(cfg, policy, command.resolved_format(), command.out)

            _print_lines(format_error_message(f"Unhandled command: {command.type.value}"), sys.stderr)
            return EXIT_USAGE

        except (ValidationError, ProtocolError) as e:
            _print_lines(format_error_message(e.message, e.suggestion), sys.stderr)
            return EXIT_USAGE

        except ValueError as e:
            # Numeric-layer errors raised from user-supplied parameters
            _print_lines(format_error_message(str(e)), sys.stderr)
            return EXIT_USAGE

        except Exception as e:
            logger.error(f"Error executing {command.type.value}: {e}", exc_info=True)
            _print_lines(format_error_message("Command failed", format_info_message(str(e))), sys.stderr)
            return EXIT_USAGE
