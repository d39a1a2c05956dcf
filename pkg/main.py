#!/usr/bin/env python3
"""
Swapurify Main Application

Command-line entry point: reproduce region scans and concurrence curves,
run the verification suites, and execute single protocol instances.
"""

import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from commands import (
    EXIT_USAGE,
    CommandHandler,
    config_path_from,
    load_config,
    parse_command,
)
from formatting import format_error_message
from protocol import ConfigError


def configure_logging() -> None:
    """Configure the root logger from LOG_LEVEL and LOG_FILE."""
    log_level = getattr(logging, os.environ.get('LOG_LEVEL', 'WARNING').upper(), logging.WARNING)
    log_file = os.environ.get('LOG_FILE')
    handlers: list = [logging.StreamHandler(sys.stderr)]
    if log_file:
        try:
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(log_file))
        except OSError as e:
            # Fall back to stderr-only if the log file can't be opened
            print(f"WARNING: cannot open log file {log_file!r}: {e}; logging to stderr only", file=sys.stderr)

    logging.basicConfig(
        level=log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
    )


logger = logging.getLogger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse, configure and dispatch one command.

    Args:
        argv: Arguments after the program name (default: sys.argv[1:])

    Returns:
        Process exit code
    """
    args = sys.argv[1:] if argv is None else argv
    command = parse_command(args)

    try:
        config = load_config(config_path_from(command.config_path))
        handler = CommandHandler(config)
    except ConfigError as e:
        for line in format_error_message(e.message, e.suggestion):
            print(line, file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        for line in format_error_message(f"Invalid configuration: {e}"):
            print(line, file=sys.stderr)
        return EXIT_USAGE

    try:
        return handler.handle(command)
    except KeyboardInterrupt:
        logger.info("Interrupted")
        return EXIT_USAGE


if __name__ == '__main__':
    configure_logging()
    sys.exit(main())
