"""
Tests for protocol/regions.py

Covers: Axis, evaluate_point, enhancement_region, phi_curve, chi_curve,
        threshold_checks, chi_sign_checks.
"""

import math

import numpy as np
import pytest

from entanglement import (
    concurrence_ab_phi,
    concurrence_chi_ab,
    concurrence_chi_ac,
    concurrence_phi_round1,
    concurrence_phi_roundn,
    normalization_phi_round1,
)
from protocol import (
    ACCEPT_SETS,
    Axis,
    ConfigError,
    Family,
    Method,
    ProtocolConfig,
    WeakPolicy,
    chi_curve,
    default_threads,
    enhancement_region,
    evaluate_point,
    is_increasing_chain,
    chi_sign_checks,
    phi_curve,
    threshold_checks,
)
from protocol.regions import DEGENERATE_POINT
from qmat import DEFAULT_POLICY


# ---------------------------------------------------------------------------
# Axis
# ---------------------------------------------------------------------------

class TestAxis:
    def test_values(self):
        assert np.allclose(Axis('p', 0.0, 1.0, 5).values(), [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_unknown_name(self):
        with pytest.raises(ConfigError):
            Axis('q', 0.0, 1.0, 5)

    def test_too_few_steps(self):
        with pytest.raises(ConfigError):
            Axis('a', 0.0, 1.0, 1)

    def test_reversed_range(self):
        with pytest.raises(ConfigError):
            Axis('a', 0.5, 0.5, 3)


class TestIncreasingChain:
    def test_strictly_increasing(self):
        assert is_increasing_chain(0.5, [0.6, 0.7], 1e-9)

    def test_margin(self):
        assert not is_increasing_chain(0.5, [0.5 + 1e-12], 1e-9)

    def test_dip_in_middle(self):
        assert not is_increasing_chain(0.5, [0.7, 0.6, 0.8], 1e-9)

    def test_empty_chain(self):
        assert not is_increasing_chain(0.5, [], 1e-9)


# ---------------------------------------------------------------------------
# evaluate_point
# ---------------------------------------------------------------------------

class TestEvaluatePoint:
    def test_closed_form_reference_point(self):
        point = evaluate_point(ProtocolConfig(a=0.3, p=0.1))
        assert point.c_initial == pytest.approx(0.8248636, abs=1e-7)
        assert point.c_final == pytest.approx(0.8630137, abs=1e-7)
        assert point.enhanced
        assert point.branch_probability == pytest.approx(0.3942)

    @pytest.mark.parametrize("cfg", [
        ProtocolConfig(a=0.3, p=0.1),
        ProtocolConfig(a=0.6, p=0.05),
        ProtocolConfig(a=0.3, p=0.1, b=0.22, rounds=3),
        ProtocolConfig(a=0.3, p=0.1, b=0.78, rounds=2, weak_policy=WeakPolicy.BOTH_MINUS),
        ProtocolConfig(family=Family.PHI_ASYM, a=0.2, a_prime=0.6, p=0.1),
        ProtocolConfig(family=Family.CHI, A=0.9, p=0.1),
        ProtocolConfig(family=Family.CHI, A=0.9, p=0.1, b=0.25, finish_with_weak=True),
    ])
    def test_methods_agree(self, cfg):
        closed = evaluate_point(cfg, Method.CLOSED_FORM)
        simulated = evaluate_point(cfg, Method.SIMULATE)
        assert closed.enhanced == simulated.enhanced
        assert closed.c_initial == pytest.approx(simulated.c_initial, abs=1e-9)
        assert closed.c_final == pytest.approx(simulated.c_final, abs=1e-9)
        assert closed.branch_probability == pytest.approx(simulated.branch_probability, abs=1e-9)
        assert closed.chain == pytest.approx(simulated.chain, abs=1e-9)

    def test_chain_length_with_finishing_weak_step(self):
        cfg = ProtocolConfig(family=Family.CHI, A=0.9, p=0.1, b=0.25, finish_with_weak=True)
        point = evaluate_point(cfg, Method.SIMULATE)
        assert len(point.chain) == 1
        assert point.c_initial == pytest.approx(concurrence_chi_ab(0.9, 0.1), abs=1e-9)

    def test_unsupported_configuration_falls_back_to_simulation(self):
        cfg = ProtocolConfig(a=0.3, p=0.1, accepted_bell=ACCEPT_SETS['all'])
        point = evaluate_point(cfg, Method.CLOSED_FORM)
        assert point.branch_probability == pytest.approx(1.0)

    @pytest.mark.parametrize("cfg", [
        ProtocolConfig(a=0.0, p=0.1),
        ProtocolConfig(a=0.3, p=1.0),
        ProtocolConfig(family=Family.CHI, A=1.0, p=0.1),
    ])
    @pytest.mark.parametrize("method", list(Method))
    def test_degenerate_points(self, cfg, method):
        assert evaluate_point(cfg, method) == DEGENERATE_POINT

    def test_tolerance_sets_margin(self):
        cfg = ProtocolConfig(a=0.3, p=0.1)
        gain = concurrence_phi_round1(0.3, 0.1) - concurrence_ab_phi(0.3, 0.1)
        loose = DEFAULT_POLICY.with_compare_tol(gain * 2)
        assert evaluate_point(cfg).enhanced
        assert not evaluate_point(cfg, policy=loose).enhanced


# ---------------------------------------------------------------------------
# enhancement_region
# ---------------------------------------------------------------------------

class TestEnhancementRegion:
    def test_grid_shape_and_order(self):
        grid = enhancement_region(ProtocolConfig(), Axis('p', 0.1, 0.9, 3), Axis('a', 0.1, 0.9, 4), threads=1)
        assert grid.mask().shape == (3, 4)
        rows = list(grid.rows())
        assert len(rows) == 12
        assert [r[0] for r in rows[:4]] == pytest.approx([0.1] * 4)
        assert [r[1] for r in rows[:4]] == pytest.approx(list(np.linspace(0.1, 0.9, 4)))

    def test_points_match_evaluate_point(self):
        grid = enhancement_region(ProtocolConfig(), Axis('p', 0.1, 0.9, 3), Axis('a', 0.1, 0.9, 3), threads=1)
        for p, a, point in grid.rows():
            assert point.c_final == pytest.approx(concurrence_phi_round1(a, p))

    def test_thread_count_does_not_change_result(self):
        base = ProtocolConfig(rounds=2, b=0.22)
        axes = (Axis('p', 0.05, 0.95, 5), Axis('a', 0.05, 0.95, 5))
        single = enhancement_region(base, *axes, threads=1)
        parallel = enhancement_region(base, *axes, threads=4)
        assert single.points == parallel.points

    def test_small_a_column_enhanced(self):
        grid = enhancement_region(ProtocolConfig(), Axis('p', 0.01, 0.99, 6), Axis('a', 0.01, 0.2, 4), threads=2)
        assert grid.mask().all()

    def test_boundary_rows_are_degenerate(self):
        grid = enhancement_region(ProtocolConfig(), Axis('p', 0.5, 1.0, 2), Axis('a', 0.0, 0.5, 2), threads=1)
        mask = grid.mask()
        assert not mask[1].any()
        assert not mask[:, 0].any()

    def test_same_axis_twice(self):
        with pytest.raises(ConfigError):
            enhancement_region(ProtocolConfig(), Axis('a', 0.1, 0.9, 2), Axis('a', 0.1, 0.9, 2))

    def test_default_threads_from_env(self, monkeypatch):
        monkeypatch.setenv('SWAPURIFY_THREADS', '3')
        assert default_threads() == 3
        monkeypatch.setenv('SWAPURIFY_THREADS', 'many')
        assert default_threads() >= 1


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------

class TestCurves:
    def test_phi_columns(self):
        curve = phi_curve(0.3, 0.22, (1, 2, 3), [0.1])
        assert curve.columns == ('p', 'C_rho_AB', 'C_round1', 'C_round2', 'C_round3')

    def test_phi_reference_row(self):
        curve = phi_curve(0.3, 0.22, (1, 2), [0.1])
        row = dict(zip(curve.columns, curve.rows[0]))
        assert row['C_rho_AB'] == pytest.approx(0.8248636, abs=1e-7)
        assert row['C_round1'] == pytest.approx(0.8630137, abs=1e-7)
        assert row['C_round2'] == pytest.approx(0.9178185, abs=1e-7)

    def test_phi_methods_agree(self):
        p_values = np.linspace(0.05, 0.5, 4)
        closed = phi_curve(0.3, 0.22, (1, 2, 3), p_values, Method.CLOSED_FORM)
        simulated = phi_curve(0.3, 0.22, (1, 2, 3), p_values, Method.SIMULATE)
        for c_row, s_row in zip(closed.rows, simulated.rows):
            assert c_row == pytest.approx(s_row, abs=1e-9)

    def test_phi_ordering(self):
        for row in phi_curve(0.3, 0.22, (1, 2, 3), np.linspace(0.01, 0.5, 10)).rows:
            assert row[2] < row[3] < row[4]

    @pytest.mark.parametrize("p,inside", [(0.1, True), (0.22, False), (0.3, False)])
    def test_first_round_beats_input_only_in_region(self, p, inside):
        _, c_ab, c1, c2 = phi_curve(0.3, 0.22, (1, 2), [p]).rows[0]
        assert (c1 > c_ab) == inside
        assert c2 > c1
        assert evaluate_point(ProtocolConfig(a=0.3, p=p)).enhanced == inside

    def test_crossover_values(self):
        _, c_ab, c1 = phi_curve(0.3, 0.22, (1,), [0.3]).rows[0]
        assert c_ab == pytest.approx(1.4 * math.sqrt(0.21))
        assert c1 == pytest.approx(0.49 / 0.79, abs=1e-9)

    def test_undefined_points_are_nan(self):
        row = phi_curve(0.3, 0.22, (1, 2), [1.0]).rows[0]
        assert row[1] == 0.0
        assert math.isnan(row[2]) and math.isnan(row[3])

    def test_chi_columns_and_values(self):
        curve = chi_curve(0.9, 0.25, [0.1])
        assert curve.columns == ('p', 'C_chi_AB', 'C_chi_AC', 'C_chi_AC_weak')
        p, c_ab, c_ac, c_weak = curve.rows[0]
        assert c_ab == pytest.approx(concurrence_chi_ab(0.9, 0.1))
        assert c_ac == pytest.approx(concurrence_chi_ac(0.9, 0.1))
        assert c_weak > c_ab

    def test_chi_methods_agree(self):
        p_values = np.linspace(0.05, 0.6, 4)
        closed = chi_curve(0.9, 0.25, p_values, Method.CLOSED_FORM)
        simulated = chi_curve(0.9, 0.25, p_values, Method.SIMULATE)
        for c_row, s_row in zip(closed.rows, simulated.rows):
            assert c_row == pytest.approx(s_row, abs=1e-9)


# ---------------------------------------------------------------------------
# Thresholds
# ---------------------------------------------------------------------------

class TestThresholds:
    def test_only_both_plus_below_one_third(self):
        report = threshold_checks(0.3, 0.1, 0.22)
        assert report.c_round1 == pytest.approx(0.8630137, abs=1e-7)
        assert report.enhancing == (WeakPolicy.BOTH_PLUS,)

    def test_only_both_minus_above_two_thirds(self):
        assert threshold_checks(0.3, 0.1, 0.78).enhancing == (WeakPolicy.BOTH_MINUS,)

    def test_nothing_enhances_in_between(self):
        assert threshold_checks(0.3, 0.1, 0.5).enhancing == ()

    def test_entries_match_closed_form(self):
        for entry in threshold_checks(0.4, 0.2, 0.15).entries:
            assert entry.c_round2 == pytest.approx(entry.c_round2_closed, abs=1e-9)

    def test_round_n_consistent(self):
        report = threshold_checks(0.3, 0.1, 0.22)
        plus = report.entries[0]
        assert plus.c_round2 == pytest.approx(concurrence_phi_roundn(0.3, 0.1, 0.22, 2), abs=1e-9)
        assert report.c_round1 == pytest.approx(concurrence_phi_round1(0.3, 0.1))
        assert normalization_phi_round1(0.3, 0.1) == pytest.approx(0.3942)


# ---------------------------------------------------------------------------
# Chi weak signs
# ---------------------------------------------------------------------------

MIXED = (WeakPolicy.MIXED, WeakPolicy.MIXED_SWAPPED)


class TestChiWeakSigns:
    def test_both_plus_gains_below_half(self):
        report = chi_sign_checks(0.71, 0.1, 0.36)
        assert not report.baseline.enhanced
        assert report.gained == (WeakPolicy.BOTH_PLUS,)
        assert report.point(WeakPolicy.BOTH_PLUS).c_final == pytest.approx(0.76735, abs=1e-4)

    def test_both_minus_gains_above_half(self):
        assert chi_sign_checks(0.71, 0.1, 0.64).gained == (WeakPolicy.BOTH_MINUS,)

    @pytest.mark.parametrize("b", [0.2, 0.36, 0.75])
    def test_both_minus_mirrors_both_plus(self, b):
        plus = chi_sign_checks(0.8, 0.15, b).point(WeakPolicy.BOTH_PLUS)
        minus = chi_sign_checks(0.8, 0.15, 1.0 - b).point(WeakPolicy.BOTH_MINUS)
        assert plus.c_final == pytest.approx(minus.c_final, abs=1e-10)

    def test_mixed_signs_lose_points(self):
        report = chi_sign_checks(0.9, 0.1, 0.2)
        assert report.baseline.enhanced
        assert set(MIXED) <= set(report.lost)

    def test_closed_form_matches_simulation(self):
        closed = chi_sign_checks(0.71, 0.1, 0.36, Method.CLOSED_FORM).point(WeakPolicy.BOTH_PLUS)
        simulated = chi_sign_checks(0.71, 0.1, 0.36).point(WeakPolicy.BOTH_PLUS)
        assert closed.c_final == pytest.approx(simulated.c_final, abs=1e-9)

    @pytest.mark.parametrize("b", [0.25, 0.75])
    def test_mixed_regions_inside_plain_region(self, b):
        axes = (Axis('p', 0.005, 0.6, 6), Axis('A', 0.05, 0.95, 6))
        base = ProtocolConfig(family=Family.CHI, b=b)
        plain = enhancement_region(base, *axes, Method.SIMULATE, threads=2).mask()
        for weak_policy in MIXED:
            cfg = ProtocolConfig(family=Family.CHI, b=b, weak_policy=weak_policy, finish_with_weak=True)
            mixed = enhancement_region(cfg, *axes, Method.SIMULATE, threads=2).mask()
            assert not np.any(mixed & ~plain)
            assert mixed.sum() < plain.sum()

    @pytest.mark.parametrize("b,enlarging", [(0.36, WeakPolicy.BOTH_PLUS), (0.64, WeakPolicy.BOTH_MINUS)])
    def test_uniform_signs_enlarge_region(self, b, enlarging):
        axes = (Axis('p', 0.1, 0.1 + 1e-3, 2), Axis('A', 0.70, 0.73, 4))
        plain = enhancement_region(ProtocolConfig(family=Family.CHI, b=b), *axes, Method.SIMULATE, threads=1).mask()
        cfg = ProtocolConfig(family=Family.CHI, b=b, weak_policy=enlarging, finish_with_weak=True)
        weak = enhancement_region(cfg, *axes, Method.SIMULATE, threads=1).mask()
        assert weak.sum() > plain.sum()
