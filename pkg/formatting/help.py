"""
Swapurify Help Formatter

Format usage summaries, status messages and verification reports.
"""

from typing import Any, List, Optional, Sequence, Tuple

from .data import format_number


def format_main_menu() -> List[str]:
    """
    Format the subcommand summary.

    Returns:
        List of formatted lines
    """
    return [
        "COMMANDS",
        "scan    Enhancement region over a 2-D grid",
        "curve   Concurrence against p",
        "verify  Run verification suites",
        "run     Single protocol instance (JSON)",
        "",
        "--preset NAME expands to a saved flag set",
    ]


def format_preset_list(presets: dict) -> List[str]:
    """
    Format the available presets with their subcommand.

    Args:
        presets: Mapping of name to (subcommand, flags)

    Returns:
        List of formatted lines
    """
    rows = [[name, subcommand, ' '.join(flags)] for name, (subcommand, flags) in sorted(presets.items())]
    return ["PRESETS"] + format_table(rows)


def format_error_message(error: str, context: Optional[str] = None) -> List[str]:
    """
    Format error message.

    Args:
        error: Error message
        context: Optional context/hint

    Returns:
        List of formatted lines
    """
    lines = [f"ERR: {error}"]

    if context:
        lines.append(context)

    return lines


def format_success_message(message: str) -> str:
    """
    Format success message.

    Args:
        message: Success message

    Returns:
        Formatted message
    """
    return f"OK: {message}"


def format_info_message(message: str) -> str:
    """
    Format informational message.

    Args:
        message: Info message

    Returns:
        Formatted message
    """
    return f"INFO: {message}"


def format_status_line(
    items: List[Tuple[str, str]],
    separator: str = " | "
) -> str:
    """
    Format a status line with key-value pairs.

    Args:
        items: List of (key, value) tuples
        separator: Separator between items

    Returns:
        Formatted status line
    """
    return separator.join(f"{key}: {value}" for key, value in items)


def format_table(
    rows: List[List[str]],
    headers: Optional[List[str]] = None,
    compact: bool = True
) -> List[str]:
    """
    Format a simple table.

    Args:
        rows: List of rows (each row is list of strings)
        headers: Optional header row
        compact: Single-space columns (default: True)

    Returns:
        List of formatted lines
    """
    if not rows:
        return []

    all_rows = [headers] + rows if headers else rows
    num_cols = max(len(row) for row in all_rows)
    col_widths = [
        max(len(str(row[i])) for row in all_rows if i < len(row))
        for i in range(num_cols)
    ]

    def render(row: Sequence) -> str:
        if compact:
            return ' '.join(str(cell) for cell in row)
        return ' '.join(str(cell).ljust(col_widths[i]) for i, cell in enumerate(row)).rstrip()

    lines = []
    if headers:
        lines.append(render(headers))
        if not compact:
            lines.append('-' * len(lines[0]))
    lines.extend(render(row) for row in rows)
    return lines


def _check_line(check: Any) -> str:
    parts = [check.name]
    if check.max_deviation is not None:
        parts.append(f"max_dev={format_number(check.max_deviation)}")
        parts.append(f"tol={format_number(check.tolerance)}")
    if check.detail:
        parts.append(check.detail)
    return ' '.join(parts)


def format_suite_report(report: Any) -> List[str]:
    """
    Format one verification suite (a commands.verify.SuiteReport).

    Returns:
        Header line, then one OK/ERR line per check
    """
    status = "PASS" if report.passed else "FAIL"
    lines = [f"{report.suite.upper()} {status}"]
    for check in report.checks:
        line = _check_line(check)
        lines.append(format_success_message(line) if check.passed else format_error_message(line)[0])
    return lines


def format_verify_summary(reports: Sequence[Any]) -> List[str]:
    """
    Format all suites plus a closing summary line.

    Returns:
        List of formatted lines
    """
    lines = []
    for report in reports:
        lines.extend(format_suite_report(report))
    failed = [r.suite for r in reports if not r.passed]
    if failed:
        lines.extend(format_error_message(f"{len(failed)} suite(s) failed", ', '.join(failed)))
    else:
        lines.append(format_success_message(f"{len(reports)} suite(s) passed"))
    return lines
