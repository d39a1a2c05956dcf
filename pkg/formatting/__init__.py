"""
Swapurify Formatting Module

Deterministic data files (CSV/JSON) and human-readable report lines.
"""

# Data files
from .data import (
    SIGNIFICANT_DIGITS,
    SCAN_COLUMNS,
    RUN_COLUMNS,
    format_number,
    round_number,
    format_csv,
    format_json,
    scan_to_csv,
    scan_to_json,
    curve_to_csv,
    curve_to_json,
    run_to_csv,
    run_to_json,
    write_output
)

# Help and messages
from .help import (
    format_main_menu,
    format_preset_list,
    format_error_message,
    format_success_message,
    format_info_message,
    format_status_line,
    format_table,
    format_suite_report,
    format_verify_summary
)

__all__ = [
    # Data files
    'SIGNIFICANT_DIGITS',
    'SCAN_COLUMNS',
    'RUN_COLUMNS',
    'format_number',
    'round_number',
    'format_csv',
    'format_json',
    'scan_to_csv',
    'scan_to_json',
    'curve_to_csv',
    'curve_to_json',
    'run_to_csv',
    'run_to_json',
    'write_output',

    # Help and messages
    'format_main_menu',
    'format_preset_list',
    'format_error_message',
    'format_success_message',
    'format_info_message',
    'format_status_line',
    'format_table',
    'format_suite_report',
    'format_verify_summary'
]
