"""
Tests for commands/parser.py

Covers: subcommand parsing, protocol flags, scan/curve options, presets,
        help requests and error reporting.
"""

import pytest

from commands.models import PRESETS, Command, OutputFormat, SubcommandType
from commands.parser import CommandParser, parse_command
from protocol import Method


def assert_error(args, fragment=None):
    cmd = parse_command(args)
    assert cmd.type == SubcommandType.UNKNOWN
    assert not cmd.is_valid()
    if fragment:
        assert fragment in cmd.error
    return cmd


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

class TestSubcommands:
    @pytest.mark.parametrize("name,expected", [
        ("scan", SubcommandType.SCAN),
        ("curve", SubcommandType.CURVE),
        ("verify", SubcommandType.VERIFY),
        ("run", SubcommandType.RUN),
    ])
    def test_types(self, name, expected):
        cmd = parse_command([name])
        assert cmd.type == expected
        assert cmd.is_valid()
        assert cmd.raw_args == [name]

    def test_no_subcommand(self):
        assert_error([], "No subcommand given")

    def test_unknown_subcommand(self):
        assert_error(["purify"])

    def test_writes_data(self):
        assert parse_command(["scan"]).writes_data()
        assert not parse_command(["verify"]).writes_data()

    def test_resolved_format_defaults(self):
        assert parse_command(["run"]).resolved_format() == OutputFormat.JSON
        assert parse_command(["scan"]).resolved_format() == OutputFormat.CSV
        assert parse_command(["run", "--format", "csv"]).resolved_format() == OutputFormat.CSV


class TestHelp:
    @pytest.mark.parametrize("args", [["--help"], ["-h"], ["scan", "--help"], ["verify", "-h"]])
    def test_help_requests(self, args):
        cmd = parse_command(args)
        assert cmd.type == SubcommandType.HELP
        assert cmd.is_valid()
        assert "usage:" in cmd.help_text


# ---------------------------------------------------------------------------
# Protocol flags
# ---------------------------------------------------------------------------

class TestProtocolFlags:
    def test_numeric_flags(self):
        cmd = parse_command(["run", "--a", "0.3", "--a-prime", "0.6", "--A", "0.9",
                             "--p", "0.1", "--b", "0.22", "--rounds", "3"])
        assert cmd.params == {'a': 0.3, 'a_prime': 0.6, 'A': 0.9, 'p': 0.1, 'b': 0.22, 'rounds': 3}

    def test_unset_flags_absent(self):
        assert parse_command(["run"]).params == {}

    def test_family(self):
        assert parse_command(["run", "--family", "phi-asym"]).params['family'] == 'phi-asym'

    def test_bad_family(self):
        assert_error(["run", "--family", "omega"])

    @pytest.mark.parametrize("given,stored", [("pp", "pp"), ("mm", "mm"), ("mixed", "pm"), ("mp", "mp"), ("none", "none")])
    def test_weak_policy_aliases(self, given, stored):
        assert parse_command(["run", "--weak-policy", given]).params['weak_policy'] == stored

    def test_accept(self):
        assert parse_command(["run", "--accept", "all"]).params['accepted_bell'] == 'all'

    def test_switches(self):
        cmd = parse_command(["run", "--finish-weak", "--no-flip"])
        assert cmd.params['finish_with_weak'] is True
        assert cmd.params['flip_second'] is False

    def test_p_per_qubit(self):
        assert parse_command(["run", "--p-per-qubit", "0.1,0.2"]).params['p_per_qubit'] == (0.1, 0.2)

    @pytest.mark.parametrize("value", ["0.1", "0.1,0.2,0.3", "a,b", "nan,0.1"])
    def test_bad_p_per_qubit(self, value):
        assert_error(["run", "--p-per-qubit", value])

    def test_bad_float(self):
        assert_error(["run", "--a", "abc"])

    def test_output_flags(self):
        cmd = parse_command(["run", "--format", "json", "--out", "out.json", "--tol", "1e-6"])
        assert cmd.output_format == OutputFormat.JSON
        assert cmd.out == "out.json"
        assert cmd.tol == 1e-6

    @pytest.mark.parametrize("tol", ["0", "-0.5", "nan"])
    def test_tolerance_must_be_positive(self, tol):
        assert_error(["run", "--tol", tol], "tolerance")


# ---------------------------------------------------------------------------
# Scan / curve / verify options
# ---------------------------------------------------------------------------

class TestScanOptions:
    def test_full_scan(self):
        cmd = parse_command(["scan", "--axes", "p,a", "--range1", "0.1:0.9", "--range2", "0:1",
                             "--grid", "10x20", "--threads", "2", "--method", "simulate"])
        assert cmd.axes == ('p', 'a')
        assert cmd.range1 == (0.1, 0.9)
        assert cmd.range2 == (0.0, 1.0)
        assert cmd.grid == (10, 20)
        assert cmd.threads == 2
        assert cmd.method == Method.SIMULATE

    def test_default_method(self):
        assert parse_command(["scan"]).method == Method.CLOSED_FORM

    def test_grid_uppercase_separator(self):
        assert parse_command(["scan", "--grid", "5X6"]).grid == (5, 6)

    @pytest.mark.parametrize("args,fragment", [
        (["--axes", "p"], "Invalid axes"),
        (["--axes", "p,q"], "Unknown axis"),
        (["--axes", "a,a"], "two different"),
        (["--range1", "0.9:0.1"], "LO < HI"),
        (["--range1", "0.1"], "LO:HI"),
        (["--range2", "nan:1"], "Invalid --range2"),
        (["--grid", "1x5"], "at least 2"),
        (["--grid", "10"], "Invalid grid"),
        (["--grid", "axb"], "grid size"),
        (["--threads", "0"], "--threads"),
    ])
    def test_invalid(self, args, fragment):
        assert_error(["scan"] + args, fragment)


class TestCurveOptions:
    def test_curve_options(self):
        cmd = parse_command(["curve", "--p-range", "0:0.5", "--points", "10"])
        assert cmd.p_range == (0.0, 0.5)
        assert cmd.points == 10

    def test_points_minimum(self):
        assert_error(["curve", "--points", "1"], "--points")

    def test_scan_flags_rejected(self):
        assert_error(["curve", "--grid", "5x5"])


class TestVerifyOptions:
    def test_default_suite(self):
        assert parse_command(["verify"]).suite == "all"

    @pytest.mark.parametrize("suite", ["kraus", "closedforms", "claims", "thresholds", "asymptotic"])
    def test_named_suite(self, suite):
        assert parse_command(["verify", suite]).suite == suite

    def test_unknown_suite(self):
        assert_error(["verify", "everything"])

    def test_verify_tol_and_out(self):
        cmd = parse_command(["verify", "kraus", "--tol", "1e-6", "--out", "report.txt"])
        assert cmd.tol == 1e-6
        assert cmd.out == "report.txt"

    def test_protocol_flags_rejected(self):
        assert_error(["verify", "--a", "0.3"])


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def _comparable(cmd: Command) -> dict:
    fields = dict(vars(cmd))
    fields.pop('raw_args')
    fields.pop('preset')
    return fields


class TestPresets:
    @pytest.mark.parametrize("name", sorted(PRESETS))
    def test_preset_equals_explicit_flags(self, name):
        subcommand, flags = PRESETS[name]
        from_preset = parse_command(["--preset", name])
        explicit = parse_command([subcommand] + flags)
        assert from_preset.is_valid(), from_preset.error
        assert from_preset.preset == name
        assert _comparable(from_preset) == _comparable(explicit)

    def test_fig4_values(self):
        cmd = parse_command(["--preset", "fig4"])
        assert cmd.type == SubcommandType.CURVE
        assert cmd.params == {'family': 'phi', 'a': 0.3, 'b': 0.22, 'rounds': 3}
        assert cmd.p_range == (0.0, 0.99)
        assert cmd.points == 100

    def test_fig5b_values(self):
        cmd = parse_command(["--preset", "fig5b"])
        assert cmd.params['b'] == 0.25
        assert cmd.params['finish_with_weak'] is True
        assert cmd.axes == ('p', 'A')

    def test_later_flags_override(self):
        cmd = parse_command(["--preset", "fig1", "--grid", "7x9", "--out", "f.csv"])
        assert cmd.grid == (7, 9)
        assert cmd.out == "f.csv"
        assert cmd.axes == ('p', 'a')

    def test_override_protocol_value(self):
        assert parse_command(["--preset", "fig2", "--p", "0.05"]).params['p'] == 0.05

    def test_equals_form(self):
        assert parse_command(["--preset=fig2c"]).params['p'] == 0.01

    def test_with_matching_subcommand(self):
        assert parse_command(["scan", "--preset", "fig1"]).type == SubcommandType.SCAN

    def test_with_mismatched_subcommand(self):
        assert_error(["curve", "--preset", "fig1"], "scan preset")

    def test_with_config(self):
        cmd = parse_command(["--config", "alt.yaml", "--preset", "fig1"])
        assert cmd.config_path == "alt.yaml"
        assert cmd.type == SubcommandType.SCAN

    def test_unknown_preset(self):
        assert_error(["--preset", "fig9"], "Unknown preset")

    def test_missing_name(self):
        assert_error(["--preset"], "requires a name")


class TestParserReuse:
    def test_parser_instance_is_reusable(self):
        parser = CommandParser()
        first = parser.parse(["scan", "--a", "0.2"])
        second = parser.parse(["scan"])
        assert first.params == {'a': 0.2}
        assert second.params == {}
