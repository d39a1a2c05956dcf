"""
Tests for main.py and commands/handlers.py

Covers: end-to-end command lines, output files, exit codes, config file
        handling and error reporting.
"""

import json

import pytest

from commands import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED, CheckResult, SuiteReport
from commands.handlers import CommandHandler
from commands.config import DEFAULT_CONFIG
from commands.parser import parse_command
from main import main


def read_csv(path):
    lines = path.read_text().splitlines()
    return lines[0].split(','), [line.split(',') for line in lines[1:]]


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------

class TestScan:
    def test_writes_csv(self, tmp_path):
        out = tmp_path / 'region.csv'
        assert main(['scan', '--grid', '3x4', '--out', str(out)]) == EXIT_OK
        headers, rows = read_csv(out)
        assert headers == ['p', 'a', 'C_initial', 'C_final', 'enhanced', 'branch_probability']
        assert len(rows) == 12
        assert {row[4] for row in rows} <= {'0', '1'}

    def test_writes_json(self, tmp_path):
        out = tmp_path / 'region.json'
        assert main(['scan', '--grid', '2x2', '--format', 'json', '--out', str(out)]) == EXIT_OK
        payload = json.loads(out.read_text())
        assert [axis['name'] for axis in payload['axes']] == ['p', 'a']
        assert len(payload['points']) == 4
        assert payload['config']['family'] == 'phi'

    def test_stdout_when_no_out(self, capsys):
        assert main(['scan', '--grid', '2x2']) == EXIT_OK
        assert capsys.readouterr().out.startswith('p,a,C_initial')

    def test_preset_with_override(self, tmp_path):
        out = tmp_path / 'fig2.csv'
        assert main(['--preset', 'fig2', '--grid', '3x3', '--out', str(out)]) == EXIT_OK
        headers, rows = read_csv(out)
        assert headers[:2] == ['a', 'a_prime']
        assert len(rows) == 9

    def test_resolution_from_config(self, tmp_path, config_yaml):
        out = tmp_path / 'region.csv'
        assert main(['--config', str(config_yaml), 'scan', '--out', str(out)]) == EXIT_OK
        _, rows = read_csv(out)
        assert len(rows) == 25

    def test_invalid_axis_for_family(self, capsys):
        assert main(['scan', '--family', 'chi', '--axes', 'p,a']) == EXIT_USAGE
        assert 'ERR:' in capsys.readouterr().err

    def test_unwritable_output(self, tmp_path, capsys):
        out = tmp_path / 'missing' / 'region.csv'
        assert main(['scan', '--grid', '2x2', '--out', str(out)]) == EXIT_IO
        assert 'Cannot write' in capsys.readouterr().err


# ---------------------------------------------------------------------------
# curve
# ---------------------------------------------------------------------------

class TestCurve:
    def test_phi_curve(self, tmp_path):
        out = tmp_path / 'fig4.csv'
        assert main(['--preset', 'fig4', '--points', '5', '--out', str(out)]) == EXIT_OK
        headers, rows = read_csv(out)
        assert headers == ['p', 'C_rho_AB', 'C_round1', 'C_round2', 'C_round3']
        assert len(rows) == 5
        assert float(rows[0][0]) == 0.0

    def test_chi_curve(self, tmp_path):
        out = tmp_path / 'fig6.json'
        assert main(['--preset', 'fig6', '--points', '4', '--format', 'json', '--out', str(out)]) == EXIT_OK
        payload = json.loads(out.read_text())
        assert payload['columns'] == ['p', 'C_chi_AB', 'C_chi_AC', 'C_chi_AC_weak']
        assert len(payload['rows']) == 4

    def test_asym_rejected(self):
        assert main(['curve', '--family', 'phi-asym']) == EXIT_USAGE


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------

class TestRun:
    def test_reference_point_json(self, capsys):
        assert main(['run', '--a', '0.3', '--p', '0.1', '--b', '0.22', '--rounds', '2']) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        rounds = payload['rounds']
        assert len(rounds) == 2
        assert rounds[0]['concurrence'] == pytest.approx(0.8630137, abs=1e-7)
        assert rounds[1]['concurrence'] == pytest.approx(0.91781845, abs=1e-7)
        assert rounds[0]['branch'] == 'Psi±'
        assert len(rounds[0]['state']) == 16

    def test_csv_format(self, capsys):
        assert main(['run', '--format', 'csv']) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == ('round,branch,concurrence,branch_probability,'
                            'cumulative_probability,weak_probability,expected_pairs_consumed')
        assert lines[1].startswith('1,Psi±,')

    def test_chi_finish_weak(self, capsys):
        assert main(['run', '--family', 'chi', '--b', '0.25', '--finish-weak']) == EXIT_OK
        rounds = json.loads(capsys.readouterr().out)['rounds']
        assert rounds[-1]['branch'] == 'Psi± M+,M+'

    def test_mixed_policy_needs_exploratory(self, capsys):
        assert main(['run', '--rounds', '2', '--weak-policy', 'mixed']) == EXIT_USAGE
        assert 'ERR:' in capsys.readouterr().err

    def test_out_of_range_value(self):
        assert main(['run', '--a', '1.5']) == EXIT_USAGE

    def test_no_entanglement(self):
        assert main(['run', '--a', '0.3', '--p', '1']) == EXIT_USAGE


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

class TestVerify:
    def test_kraus_suite_passes(self, tmp_path, config_yaml):
        report = tmp_path / 'report.txt'
        code = main(['--config', str(config_yaml), 'verify', 'kraus', '--out', str(report)])
        assert code == EXIT_OK
        lines = report.read_text().splitlines()
        assert lines[0] == 'KRAUS PASS'
        assert lines[-1] == 'OK: 1 suite(s) passed'

    def test_failure_exit_code(self, monkeypatch, capsys):
        failing = SuiteReport('claims', [CheckResult('made_up', False, detail='a=0.5')])
        monkeypatch.setattr('commands.handlers.run_suites', lambda names, settings, policy: [failing])
        assert main(['verify', 'claims']) == EXIT_VERIFY_FAILED
        out = capsys.readouterr().out
        assert 'CLAIMS FAIL' in out
        assert 'ERR: made_up a=0.5' in out


# ---------------------------------------------------------------------------
# Usage, help and configuration errors
# ---------------------------------------------------------------------------

class TestUsage:
    def test_no_arguments(self, capsys):
        assert main([]) == EXIT_USAGE
        assert 'ERR: No subcommand given' in capsys.readouterr().err

    def test_unknown_flag(self, capsys):
        assert main(['scan', '--bogus']) == EXIT_USAGE
        assert capsys.readouterr().err.startswith('ERR:')

    def test_help(self, capsys):
        assert main(['--help']) == EXIT_OK
        out = capsys.readouterr().out
        assert 'COMMANDS' in out
        assert 'PRESETS' in out
        assert 'fig4 curve' in out

    def test_missing_config_file(self, tmp_path, capsys):
        assert main(['--config', str(tmp_path / 'nope.yaml'), 'run']) == EXIT_USAGE
        assert 'not found' in capsys.readouterr().err

    def test_malformed_config_file(self, tmp_path):
        bad = tmp_path / 'bad.yaml'
        bad.write_text("numerics: [unclosed\n")
        assert main(['--config', str(bad), 'run']) == EXIT_USAGE

    def test_config_from_environment(self, tmp_path, monkeypatch, config_yaml):
        monkeypatch.setenv('SWAPURIFY_CONFIG', str(config_yaml))
        out = tmp_path / 'region.csv'
        assert main(['scan', '--out', str(out)]) == EXIT_OK
        _, rows = read_csv(out)
        assert len(rows) == 25


class TestCommandHandler:
    def test_tolerance_override(self):
        handler = CommandHandler(DEFAULT_CONFIG)
        command = parse_command(['run', '--tol', '1e-6'])
        assert handler.policy_for(command).compare_tol == 1e-6
        assert handler.policy_for(parse_command(['run'])) is handler.policy
