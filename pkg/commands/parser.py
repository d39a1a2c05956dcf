"""
Swapurify Command Parser

Parse command-line arguments into structured Command objects.
"""

import argparse
from typing import List, Optional, Sequence, Tuple

from protocol import AXIS_NAMES, Method
from .models import Command, OutputFormat, ParseError, PRESETS, SubcommandType
from .verify import SUITES


class _HelpRequested(Exception):
    """Raised in place of printing help and exiting."""

    def __init__(self, text: str):
        self.text = text
        super().__init__(text)


class _RaisingArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of printing and exiting."""

    def error(self, message: str):
        raise ParseError(message, f"Run '{self.prog} --help' for usage")

    def print_help(self, file=None):
        raise _HelpRequested(self.format_help())

    def exit(self, status: int = 0, message: Optional[str] = None):
        raise ParseError(message.strip() if message else "Invalid arguments")


class CommandParser:
    """
    Parse command lines into Command objects.

    Supports subcommands:
        scan     - Enhancement region over a 2-D grid
        curve    - Concurrence against p
        verify   - Verification suites
        run      - Single protocol instance

    A --preset NAME anywhere on the line expands to that preset's
    subcommand and flags; later flags override the preset.
    """

    # Field each protocol flag sets on ProtocolConfig
    PROTOCOL_FLAGS = {
        'family': 'family',
        'a': 'a',
        'a_prime': 'a_prime',
        'A': 'A',
        'p': 'p',
        'b': 'b',
        'rounds': 'rounds',
        'weak_policy': 'weak_policy',
        'accept': 'accepted_bell',
        'finish_weak': 'finish_with_weak',
        'no_flip': 'flip_second',
        'p_per_qubit': 'p_per_qubit',
    }

    SUBCOMMANDS = ('scan', 'curve', 'verify', 'run')

    WEAK_POLICY_ALIASES = {
        'pp': 'pp',
        'mm': 'mm',
        'pm': 'pm',
        'mp': 'mp',
        'mixed': 'pm',
        'none': 'none',
    }

    def __init__(self):
        """Initialize parser."""
        self.argparser = self._build()

    def _build(self) -> argparse.ArgumentParser:
        parser = _RaisingArgumentParser(
            prog='swapurify',
            description='Entanglement swapping purification of amplitude-damped pairs',
        )
        parser.add_argument('--config', dest='config_path', help='YAML config file')
        subparsers = parser.add_subparsers(dest='subcommand', parser_class=_RaisingArgumentParser)

        for name in ('scan', 'curve', 'run'):
            sub = subparsers.add_parser(name)
            self._add_protocol_flags(sub)
            self._add_output_flags(sub)
            if name in ('scan', 'curve'):
                sub.add_argument('--method', choices=[m.value for m in Method])
            if name == 'scan':
                sub.add_argument('--axes', help='Two axis names, e.g. p,a')
                sub.add_argument('--range1', help='LO:HI of axis1')
                sub.add_argument('--range2', help='LO:HI of axis2')
                sub.add_argument('--grid', help='Resolution NxM')
                sub.add_argument('--threads', type=int)
            if name == 'curve':
                sub.add_argument('--p-range', dest='p_range', help='LO:HI of p')
                sub.add_argument('--points', type=int)

        verify = subparsers.add_parser('verify')
        verify.add_argument('suite', nargs='?', default='all', choices=('all',) + SUITES)
        verify.add_argument('--tol', type=float)
        verify.add_argument('--out')
        return parser

    @staticmethod
    def _add_protocol_flags(sub: argparse.ArgumentParser) -> None:
        sub.add_argument('--family', choices=['phi', 'phi-asym', 'chi'])
        sub.add_argument('--a', type=float)
        sub.add_argument('--a-prime', dest='a_prime', type=float)
        sub.add_argument('--A', dest='A', type=float)
        sub.add_argument('--p', type=float)
        sub.add_argument('--b', type=float)
        sub.add_argument('--rounds', type=int)
        sub.add_argument('--weak-policy', dest='weak_policy', choices=sorted(CommandParser.WEAK_POLICY_ALIASES))
        sub.add_argument('--accept', choices=['psi', 'phi', 'all'])
        sub.add_argument('--finish-weak', dest='finish_weak', action='store_true', default=None)
        sub.add_argument('--no-flip', dest='no_flip', action='store_true', default=None)
        sub.add_argument('--p-per-qubit', dest='p_per_qubit', help='P1,P2')
        sub.add_argument('--preset', choices=sorted(PRESETS))

    @staticmethod
    def _add_output_flags(sub: argparse.ArgumentParser) -> None:
        sub.add_argument('--format', dest='output_format', choices=[f.value for f in OutputFormat])
        sub.add_argument('--out')
        sub.add_argument('--tol', type=float)

    def parse(self, args: Sequence[str]) -> Command:
        """
        Parse arguments into a Command.

        Args:
            args: Arguments after the program name

        Returns:
            Command object (may have error set if parsing failed)
        """
        raw_args = [str(arg) for arg in args]
        try:
            expanded, preset = self._expand_preset(raw_args)
            namespace = self.argparser.parse_args(expanded)
            if namespace.subcommand is None:
                raise ParseError("No subcommand given", f"Use one of: {', '.join(self.SUBCOMMANDS)}")
            return self._to_command(namespace, raw_args, preset)
        except _HelpRequested as e:
            return Command(type=SubcommandType.HELP, raw_args=raw_args, help_text=e.text)
        except ParseError as e:
            return Command(type=SubcommandType.UNKNOWN, raw_args=raw_args, error=str(e))

    def _expand_preset(self, args: List[str]) -> Tuple[List[str], Optional[str]]:
        """Replace --preset NAME with the preset's subcommand and flags."""
        args = list(args)
        for i, arg in enumerate(args):
            if arg.startswith('--preset='):
                args[i:i + 1] = ['--preset', arg.split('=', 1)[1]]
                break
        if '--preset' not in args:
            return args, None
        index = args.index('--preset')
        if index + 1 >= len(args):
            raise ParseError("--preset requires a name", f"Presets: {', '.join(sorted(PRESETS))}")
        name = args[index + 1]
        if name not in PRESETS:
            raise ParseError(f"Unknown preset: {name}", f"Presets: {', '.join(sorted(PRESETS))}")

        subcommand, flags = PRESETS[name]
        rest = args[:index] + args[index + 2:]
        globals_ = []
        if rest[:1] == ['--config']:
            globals_, rest = rest[:2], rest[2:]
        elif rest and rest[0].startswith('--config='):
            globals_, rest = rest[:1], rest[1:]
        if rest and rest[0] in self.SUBCOMMANDS:
            if rest[0] != subcommand:
                raise ParseError(f"Preset {name} is a {subcommand} preset, not {rest[0]}")
            rest = rest[1:]
        return globals_ + [subcommand] + list(flags) + rest, name

    def _to_command(self, ns: argparse.Namespace, raw_args: List[str], preset: Optional[str]) -> Command:
        cmd_type = SubcommandType(ns.subcommand)
        command = Command(type=cmd_type, raw_args=raw_args, preset=preset, config_path=ns.config_path)

        if cmd_type == SubcommandType.VERIFY:
            command.suite = ns.suite
            command.tol = self._positive(ns.tol, "tolerance")
            command.out = ns.out
            return command

        for flag, field_name in self.PROTOCOL_FLAGS.items():
            value = getattr(ns, flag)
            if value is None:
                continue
            if flag == 'weak_policy':
                value = self.WEAK_POLICY_ALIASES[value]
            elif flag == 'no_flip':
                value = not value
            elif flag == 'p_per_qubit':
                value = self._parse_pair(value, "--p-per-qubit")
            command.params[field_name] = value

        if ns.output_format:
            command.output_format = OutputFormat(ns.output_format)
        command.out = ns.out
        command.tol = self._positive(ns.tol, "tolerance")

        if cmd_type == SubcommandType.SCAN:
            command.method = Method(ns.method) if ns.method else Method.CLOSED_FORM
            if ns.axes:
                command.axes = self._parse_axes(ns.axes)
            if ns.range1:
                command.range1 = self._parse_range(ns.range1, "--range1")
            if ns.range2:
                command.range2 = self._parse_range(ns.range2, "--range2")
            if ns.grid:
                command.grid = self._parse_grid(ns.grid)
            if ns.threads is not None:
                if ns.threads < 1:
                    raise ParseError("--threads must be >= 1")
                command.threads = ns.threads

        elif cmd_type == SubcommandType.CURVE:
            command.method = Method(ns.method) if ns.method else Method.CLOSED_FORM
            if ns.p_range:
                command.p_range = self._parse_range(ns.p_range, "--p-range")
            if ns.points is not None:
                if ns.points < 2:
                    raise ParseError("--points must be >= 2")
                command.points = ns.points

        return command

    def _parse_axes(self, value: str) -> Tuple[str, str]:
        """Parse 'X,Y' into two distinct axis names."""
        parts = [part.strip() for part in value.split(',')]
        if len(parts) != 2:
            raise ParseError(f"Invalid axes: {value}", "Usage: --axes p,a")
        for part in parts:
            if part not in AXIS_NAMES:
                raise ParseError(f"Unknown axis: {part}", f"Axes: {', '.join(AXIS_NAMES)}")
        if parts[0] == parts[1]:
            raise ParseError("Axes must name two different parameters")
        return parts[0], parts[1]

    def _parse_range(self, value: str, flag: str) -> Tuple[float, float]:
        """Parse 'LO:HI'."""
        parts = value.split(':')
        if len(parts) != 2:
            raise ParseError(f"Invalid {flag}: {value}", f"Usage: {flag} LO:HI")
        lo = self._parse_float(parts[0], flag)
        hi = self._parse_float(parts[1], flag)
        if not lo < hi:
            raise ParseError(f"{flag} needs LO < HI, got {value}")
        return lo, hi

    def _parse_grid(self, value: str) -> Tuple[int, int]:
        """Parse 'NxM'."""
        parts = value.lower().split('x')
        if len(parts) != 2:
            raise ParseError(f"Invalid grid: {value}", "Usage: --grid 200x200")
        steps = tuple(self._parse_int(part, "grid size") for part in parts)
        if min(steps) < 2:
            raise ParseError("Grid needs at least 2 steps per axis")
        return steps

    def _parse_pair(self, value: str, flag: str) -> Tuple[float, float]:
        parts = value.split(',')
        if len(parts) != 2:
            raise ParseError(f"Invalid {flag}: {value}", f"Usage: {flag} P1,P2")
        return self._parse_float(parts[0], flag), self._parse_float(parts[1], flag)

    @staticmethod
    def _positive(value: Optional[float], field_name: str) -> Optional[float]:
        if value is not None and not value > 0:
            raise ParseError(f"Invalid {field_name}: {value}", "Must be positive")
        return value

    def _parse_float(self, value: str, field_name: str) -> float:
        """
        Parse a finite float.

        Raises:
            ParseError: If value is not a finite number
        """
        try:
            result = float(value)
        except ValueError:
            raise ParseError(f"Invalid {field_name}: {value}")
        if result != result or result in (float('inf'), float('-inf')):
            raise ParseError(f"Invalid {field_name}: {value}")
        return result

    def _parse_int(self, value: str, field_name: str) -> int:
        """
        Parse integer value.

        Raises:
            ParseError: If value is not a valid integer
        """
        try:
            return int(value)
        except ValueError:
            raise ParseError(f"Invalid {field_name}: {value}")


def parse_command(args: Sequence[str]) -> Command:
    """
    Parse command line (convenience function).

    Args:
        args: Arguments after the program name

    Returns:
        Command object
    """
    parser = CommandParser()
    return parser.parse(args)
