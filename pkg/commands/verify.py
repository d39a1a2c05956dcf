"""
Swapurify Verification Suites

Cross-checks closed forms against the simulator and confirms the
protocol's claims over parameter grids. Each suite returns a SuiteReport;
`verify` exits non-zero when any check fails.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from channels import amplitude_damping, apply_local_pair
from entanglement import (
    concurrence_ab_phi,
    concurrence_phi_round1,
    concurrence_phi_round2,
    concurrence_phi_roundn,
    concurrence_value,
    cumulative_probability_phi,
    probability_chi_swap,
    probability_phi_asym,
    probability_phi_round1,
    probability_phi_round2,
    rounds_to_reach,
    round2_gain,
    singlet_fraction,
    tradeoff_product,
    weak_probability_chi,
    weak_probability_phi,
)
from measure import WeakSign
from protocol import (
    Family,
    Method,
    ProtocolConfig,
    QUBIT_A,
    QUBIT_C,
    SIGN_POLICIES,
    WeakPolicy,
    chi_curve,
    chi_sign_checks,
    damped_phi_state,
    evaluate_point,
    phi_curve,
    prepare_noisy_pairs,
    purifiability_condition,
    roundn_phi_state,
    run_protocol,
    swap_round,
    swapped_asym_state,
    swapped_chi_state,
    swapped_phi_state,
    weak_chi_state,
    weak_phi_state,
    weak_preprocess,
)
from qmat import DEFAULT_POLICY, NumericsPolicy
from states import PHI_LABELS, BellLabel, DensityMatrix

logger = logging.getLogger(__name__)

SUITES = ('kraus', 'closedforms', 'claims', 'thresholds', 'asymptotic')

# Tolerances quoted by the acceptance checks
KRAUS_COMPLETENESS_TOL = 1e-12
TRACE_TOL = 1e-10
ORACLE_TOL = 1e-9
CONCURRENCE_AB_TOL = 1e-10
THRESHOLD_EQUALITY_TOL = 1e-10
TRADEOFF_TOL = 1e-12
POINT_CHECK_TOL = 1e-6

# Values at a=0.3, p=0.1, b=0.22
FIG4_POINT = {'C_rho_AB': 0.8248636, 'C_round1': 0.8630137, 'C_round2': 0.9178185}

# Phi pair whose singlet fraction is at most 1/2 yet still enhances (a, p)
LOW_FRACTION_POINT = (0.1, 0.5)

# Chi points (A, p, b): both-M+ gains a point the plain swap misses; mixed
# signs lose a point the plain swap enhances
CHI_GAIN_POINT = (0.71, 0.1, 0.36)
CHI_LOSS_POINT = (0.9, 0.1, 0.2)


@dataclass(frozen=True)
class VerifySettings:
    """
    Grid and sampling parameters for the suites.

    Attributes:
        grid: Samples per axis of the (a, p) grid
        b_values: Weak strengths checked on that grid
        max_rounds: Round bound for the asymptotic check
        asymptotic_points: Random (a, p) samples for the asymptotic check
        seed: RNG seed for random samples
    """
    grid: int = 15
    b_values: Tuple[float, ...] = (0.1, 0.22, 1.0 / 3.0, 0.4)
    max_rounds: int = 40
    asymptotic_points: int = 25
    seed: int = 0xDEADBEEF

    @classmethod
    def from_config(cls, section: Optional[Dict[str, Any]]) -> 'VerifySettings':
        """Build settings from the `verify` config section."""
        section = section or {}
        defaults = cls()
        return cls(
            grid=int(section.get('grid', defaults.grid)),
            b_values=tuple(float(b) for b in section.get('b_values', defaults.b_values)),
            max_rounds=int(section.get('max_rounds', defaults.max_rounds)),
            asymptotic_points=int(section.get('asymptotic_points', defaults.asymptotic_points)),
            seed=int(section.get('seed', defaults.seed)),
        )

    def unit_grid(self, lo: float = 0.05, hi: float = 0.95) -> np.ndarray:
        return np.linspace(lo, hi, self.grid)


@dataclass
class CheckResult:
    """
    One named check.

    Attributes:
        name: Check name, e.g. 'swap_phi_state'
        passed: Whether every sample satisfied the check
        max_deviation: Largest observed deviation (None for boolean checks)
        tolerance: Allowed deviation (None for boolean checks)
        detail: Offending parameters or notes
    """
    name: str
    passed: bool
    max_deviation: Optional[float] = None
    tolerance: Optional[float] = None
    detail: str = ""


@dataclass
class SuiteReport:
    """Results of one verification suite."""
    suite: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class _Deviation:
    """Tracks the worst deviation of a check and where it happened."""

    def __init__(self, name: str, tolerance: float):
        self.name = name
        self.tolerance = tolerance
        self.worst = 0.0
        self.where = ""

    def record(self, deviation: float, **params) -> None:
        if not deviation <= self.worst:
            self.worst = deviation
            self.where = ", ".join(f"{k}={v:.6g}" for k, v in params.items())

    def result(self) -> CheckResult:
        passed = self.worst <= self.tolerance
        detail = "" if passed else f"worst at {self.where}"
        return CheckResult(self.name, passed, self.worst, self.tolerance, detail)


class _Counterexamples:
    """Boolean check that collects failing parameter points."""

    def __init__(self, name: str, limit: int = 5):
        self.name = name
        self.limit = limit
        self.failures: List[str] = []
        self.samples = 0

    def expect(self, condition: bool, **params) -> None:
        self.samples += 1
        if not condition:
            self.failures.append(", ".join(f"{k}={v:.6g}" for k, v in params.items()))

    def result(self) -> CheckResult:
        if not self.failures:
            return CheckResult(self.name, True, detail=f"{self.samples} samples")
        shown = "; ".join(self.failures[:self.limit])
        more = len(self.failures) - self.limit
        if more > 0:
            shown += f"; ... and {more} more"
        return CheckResult(self.name, False, detail=shown)


def _entry_deviation(left: DensityMatrix, right: DensityMatrix) -> float:
    return float(np.max(np.abs(left.matrix - right.matrix)))


def _random_density(rng: np.random.Generator) -> DensityMatrix:
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = g @ np.conj(g).T
    return DensityMatrix.from_matrix(m / np.trace(m).real)


def _only(label: str):
    return {BellLabel.parse(label)}


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def verify_kraus(settings: VerifySettings, policy: NumericsPolicy = DEFAULT_POLICY) -> SuiteReport:
    """Completeness of the damping channel and trace preservation on random states."""
    report = SuiteReport('kraus')
    completeness = _Deviation('completeness', KRAUS_COMPLETENESS_TOL)
    trace = _Deviation('trace_preservation', TRACE_TOL)
    rng = np.random.default_rng(settings.seed)
    states = [_random_density(rng) for _ in range(100)]

    for p in (0.0, 0.1, 0.5, 0.9, 1.0):
        channel = amplitude_damping(p, policy)
        completeness.record(channel.completeness_error, p=p)
        for rho in states:
            out = apply_local_pair(channel, rho)
            trace.record(abs(out.trace() - 1.0), p=p)

    report.checks += [completeness.result(), trace.result()]
    return report


def verify_closed_forms(settings: VerifySettings, policy: NumericsPolicy = DEFAULT_POLICY) -> SuiteReport:
    """Every closed-form state, probability and concurrence against the simulator."""
    report = SuiteReport('closedforms')
    grid = settings.unit_grid()
    checks = {name: _Deviation(name, tol) for name, tol in (
        ('damped_pair_state', ORACLE_TOL),
        ('concurrence_ab', CONCURRENCE_AB_TOL),
        ('swap_phi_state', ORACLE_TOL),
        ('swap_phi_probability', ORACLE_TOL),
        ('swap_asym_state', ORACLE_TOL),
        ('swap_asym_probability', ORACLE_TOL),
        ('weak_phi_state', ORACLE_TOL),
        ('weak_phi_probability', ORACLE_TOL),
        ('round2_concurrence', ORACLE_TOL),
        ('roundn_state', ORACLE_TOL),
        ('roundn_concurrence', ORACLE_TOL),
        ('roundn_cumulative_probability', ORACLE_TOL),
        ('swap_chi_state', ORACLE_TOL),
        ('swap_chi_probability', ORACLE_TOL),
        ('weak_chi_state', ORACLE_TOL),
        ('weak_chi_probability', ORACLE_TOL),
    )}

    for a in grid:
        for p in grid:
            cfg = ProtocolConfig(family=Family.PHI, a=a, p=p)
            rho_ab, _ = prepare_noisy_pairs(cfg, policy)
            checks['damped_pair_state'].record(_entry_deviation(rho_ab, damped_phi_state(a, p, policy)), a=a, p=p)
            checks['concurrence_ab'].record(
                abs(concurrence_value(rho_ab, policy) - concurrence_ab_phi(a, p)), a=a, p=p)

            pairs = prepare_noisy_pairs(cfg, policy)
            for sign in ('+', '-'):
                result = swap_round(pairs, _only(f"Psi{sign}"), policy)[0]
                checks['swap_phi_state'].record(
                    _entry_deviation(result.state, swapped_phi_state(a, p, sign, policy)), a=a, p=p)
                checks['swap_phi_probability'].record(
                    abs(result.branch_probability - probability_phi_round1(a, p)), a=a, p=p)

            for a2 in grid[::4]:
                asym = ProtocolConfig(family=Family.PHI_ASYM, a=a, a_prime=a2, p=p)
                asym_pairs = prepare_noisy_pairs(asym, policy)
                for sign in ('+', '-'):
                    result = swap_round(asym_pairs, _only(f"Psi{sign}"), policy)[0]
                    checks['swap_asym_state'].record(
                        _entry_deviation(result.state, swapped_asym_state(a, a2, p, sign, policy)),
                        a=a, a_prime=a2, p=p)
                    checks['swap_asym_probability'].record(
                        abs(result.branch_probability - probability_phi_asym(a, a2, p)), a=a, a_prime=a2, p=p)

            psi_plus = swap_round(pairs, _only("Psi+"), policy)[0].state
            for b in settings.b_values:
                for target, flipped in ((QUBIT_A, False), (QUBIT_C, True)):
                    outcome = weak_preprocess(psi_plus, [(target, WeakSign.PLUS)], b, policy)
                    checks['weak_phi_state'].record(
                        _entry_deviation(outcome.post_state, weak_phi_state(a, p, b, flipped, policy)),
                        a=a, p=p, b=b)
                    checks['weak_phi_probability'].record(
                        abs(outcome.probability - weak_probability_phi(a, p, b)), a=a, p=p, b=b)

                rounds = run_protocol(ProtocolConfig(family=Family.PHI, a=a, p=p, b=b, rounds=4), policy)
                checks['round2_concurrence'].record(
                    abs(rounds[1].concurrence - concurrence_phi_round2(a, p, b)), a=a, p=p, b=b)
                for n, result in enumerate(rounds, start=1):
                    checks['roundn_state'].record(
                        _entry_deviation(result.state, roundn_phi_state(a, p, b, n, policy=policy)),
                        a=a, p=p, b=b, n=n)
                    checks['roundn_concurrence'].record(
                        abs(result.concurrence - concurrence_phi_roundn(a, p, b, n)), a=a, p=p, b=b, n=n)
                    checks['roundn_cumulative_probability'].record(
                        abs(result.cumulative_probability - cumulative_probability_phi(a, p, b, n)),
                        a=a, p=p, b=b, n=n)

            A = a
            chi_pairs = prepare_noisy_pairs(ProtocolConfig(family=Family.CHI, A=A, p=p), policy)
            for sign in ('+', '-'):
                result = swap_round(chi_pairs, _only(f"Psi{sign}"), policy)[0]
                checks['swap_chi_state'].record(
                    _entry_deviation(result.state, swapped_chi_state(A, p, sign, policy)), A=A, p=p)
                checks['swap_chi_probability'].record(
                    abs(result.branch_probability - probability_chi_swap(A, p)), A=A, p=p)
            chi_plus = swap_round(chi_pairs, _only("Psi+"), policy)[0].state
            for b in settings.b_values:
                outcome = weak_preprocess(chi_plus, [(QUBIT_A, WeakSign.PLUS), (QUBIT_C, WeakSign.PLUS)], b, policy)
                checks['weak_chi_state'].record(
                    _entry_deviation(outcome.post_state, weak_chi_state(A, p, b, policy=policy)), A=A, p=p, b=b)
                checks['weak_chi_probability'].record(
                    abs(outcome.probability - weak_probability_chi(A, p, b)), A=A, p=p, b=b)

    report.checks += [check.result() for check in checks.values()]
    return report


def verify_claims(settings: VerifySettings, policy: NumericsPolicy = DEFAULT_POLICY) -> SuiteReport:
    """Enhancement, negative-result, curve-ordering and weak-sign claims."""
    report = SuiteReport('claims')
    tol = policy.compare_tol
    p_grid = np.linspace(0.005, 0.995, settings.grid)

    small_a = _Counterexamples('small_a_always_enhanced')
    for a in np.linspace(0.005, 0.2, settings.grid):
        for p in p_grid:
            point = evaluate_point(ProtocolConfig(family=Family.PHI, a=a, p=p), Method.SIMULATE, policy)
            small_a.expect(point.enhanced, a=a, p=p)

    phi_branch = _Counterexamples('phi_branch_never_enhances')
    no_flip = _Counterexamples('unflipped_pair_degrades')
    for x in settings.unit_grid():
        for p in p_grid:
            for family in (Family.PHI, Family.CHI):
                cfg = ProtocolConfig(family=family, a=x, A=x, p=p, accepted_bell=PHI_LABELS)
                point = evaluate_point(cfg, Method.SIMULATE, policy)
                phi_branch.expect(not point.enhanced, a=x, p=p)
            point = evaluate_point(ProtocolConfig(family=Family.PHI, a=x, p=p, flip_second=False),
                                   Method.SIMULATE, policy)
            no_flip.expect(point.c_final < point.c_initial, a=x, p=p)

    ordering = _Counterexamples('round_ordering')
    first_round = _Counterexamples('round1_beats_input_in_region')
    curve = phi_curve(0.3, 0.22, (1, 2, 3), np.linspace(0.01, 0.5, 50), Method.SIMULATE, policy)
    for p, c_ab, *rounds in curve.rows:
        ordering.expect(all(hi > lo + tol for lo, hi in zip(rounds, rounds[1:])), p=p)
        # C_AB < C1 holds only inside the one-round enhancement region
        region = evaluate_point(ProtocolConfig(family=Family.PHI, a=0.3, p=p), Method.CLOSED_FORM, policy)
        first_round.expect((rounds[0] > c_ab + tol) == region.enhanced, p=p)

    point_values = _Deviation('round_point_values', POINT_CHECK_TOL)
    point_curve = phi_curve(0.3, 0.22, (1, 2), [0.1], Method.SIMULATE, policy)
    point_row = dict(zip(point_curve.columns, point_curve.rows[0]))
    for column, expected in FIG4_POINT.items():
        point_values.record(abs(point_row[column] - expected), a=0.3, p=0.1)

    dominance = _Counterexamples('chi_weak_dominates')
    for p, c_ab, _, c_weak in chi_curve(0.9, 0.25, np.linspace(0.01, 0.6, 50), Method.SIMULATE, policy).rows:
        dominance.expect(c_weak > c_ab + tol, p=p)

    purifiable = _Counterexamples('swap_state_purifiable')
    for a in settings.unit_grid():
        purifiable.expect(purifiability_condition(swapped_phi_state(a, 0.1, policy=policy), policy).holds, a=a)

    low_fraction = _Counterexamples('low_singlet_fraction_enhanced')
    a, p = LOW_FRACTION_POINT
    point = evaluate_point(ProtocolConfig(family=Family.PHI, a=a, p=p), Method.SIMULATE, policy)
    low_fraction.expect(singlet_fraction(damped_phi_state(a, p, policy)) <= 0.5 and point.enhanced, a=a, p=p)

    chi_signs = _Counterexamples('chi_weak_sign_regions')
    mirror = _Deviation('chi_minus_mirrors_plus', ORACLE_TOL)
    A, p, b = CHI_GAIN_POINT
    chi_signs.expect(chi_sign_checks(A, p, b, policy=policy).gained == (WeakPolicy.BOTH_PLUS,), A=A, p=p, b=b)
    chi_signs.expect(chi_sign_checks(A, p, 1.0 - b, policy=policy).gained == (WeakPolicy.BOTH_MINUS,),
                     A=A, p=p, b=1.0 - b)
    A, p, b = CHI_LOSS_POINT
    mixed = {WeakPolicy.MIXED, WeakPolicy.MIXED_SWAPPED}
    chi_signs.expect(mixed <= set(chi_sign_checks(A, p, b, policy=policy).lost), A=A, p=p, b=b)
    for A in settings.unit_grid():
        for p in settings.unit_grid(0.005, 0.6):
            for b in settings.b_values:
                signs = chi_sign_checks(A, p, b, policy=policy)
                chi_signs.expect(not mixed & set(signs.gained), A=A, p=p, b=b)
                mirrored = evaluate_point(ProtocolConfig(family=Family.CHI, A=A, p=p, b=1.0 - b, finish_with_weak=True,
                                                         weak_policy=WeakPolicy.BOTH_MINUS), Method.SIMULATE, policy)
                mirror.record(abs(signs.point(WeakPolicy.BOTH_PLUS).c_final - mirrored.c_final), A=A, p=p, b=b)

    report.checks += [small_a.result(), phi_branch.result(), no_flip.result(), ordering.result(), first_round.result(),
                      point_values.result(), dominance.result(), purifiable.result(),
                      low_fraction.result(), chi_signs.result(), mirror.result()]
    return report


def verify_thresholds(settings: VerifySettings, policy: NumericsPolicy = DEFAULT_POLICY) -> SuiteReport:
    """Round-two enhancement thresholds for every weak sign pattern."""
    report = SuiteReport('thresholds')
    tol = policy.compare_tol
    classification = _Counterexamples('sign_thresholds')
    boundary = _Deviation('one_third_equality', THRESHOLD_EQUALITY_TOL)
    closed = _Deviation('round2_closed_form', ORACLE_TOL)
    tradeoff = _Deviation('tradeoff_identity', TRADEOFF_TOL)
    b_values = sorted(set(settings.b_values) | {1.0 - b for b in settings.b_values})

    for a in settings.unit_grid():
        for p in settings.unit_grid():
            c1 = concurrence_phi_round1(a, p)
            for b in b_values:
                for weak_policy in SIGN_POLICIES:
                    cfg = ProtocolConfig(family=Family.PHI, a=a, p=p, b=b, rounds=2, weak_policy=weak_policy)
                    c2 = run_protocol(cfg, policy, exploratory=True)[-1].concurrence
                    closed.record(abs(c2 - concurrence_phi_round2(a, p, b, weak_policy.value)), a=a, p=p, b=b)

                    effective = b if weak_policy is WeakPolicy.BOTH_PLUS else 1.0 - b
                    if weak_policy.is_uniform and math.isclose(effective, 1.0 / 3.0, abs_tol=1e-12):
                        boundary.record(abs(c2 - c1), a=a, p=p, b=b)
                        continue
                    expected = weak_policy.is_uniform and effective < 1.0 / 3.0
                    classification.expect((c2 > c1 + tol) == expected, a=a, p=p, b=b)

                tradeoff.record(
                    abs(concurrence_phi_round2(a, p, b) * probability_phi_round2(a, p, b)
                        - tradeoff_product(a, p, b)), a=a, p=p, b=b)

    gain = _Deviation('round2_gain_formula', ORACLE_TOL)
    for a in settings.unit_grid():
        for p in settings.unit_grid():
            for b in b_values:
                actual = concurrence_phi_round2(a, p, b) - concurrence_phi_round1(a, p)
                gain.record(abs(round2_gain(a, p, b) - actual), a=a, p=p, b=b)

    report.checks += [classification.result(), boundary.result(), closed.result(),
                      tradeoff.result(), gain.result()]
    return report


def verify_asymptotic(settings: VerifySettings, policy: NumericsPolicy = DEFAULT_POLICY) -> SuiteReport:
    """
    Rounds needed to pass 0.999 at b = 0.22 from random (a, p).

    Points that need more than max_rounds are reported but do not fail
    the suite. Cumulative probability must be positive and nonincreasing.
    """
    report = SuiteReport('asymptotic')
    rng = np.random.default_rng(settings.seed)
    b = 0.22
    slow = []
    needed = []
    monotone = _Counterexamples('cumulative_probability_nonincreasing')

    for _ in range(settings.asymptotic_points):
        a = float(rng.uniform(0.05, 0.5))
        p = float(rng.uniform(0.05, 0.5))
        n = rounds_to_reach(a, p, b, 0.999, settings.max_rounds)
        if n is None:
            trace = concurrence_phi_roundn(a, p, b, settings.max_rounds)
            slow.append(f"a={a:.6g}, p={p:.6g}, n={settings.max_rounds}, C={trace:.12g}")
        else:
            needed.append(n)

        previous = 1.0
        for k in range(1, 7):
            cumulative = cumulative_probability_phi(a, p, b, k)
            monotone.expect(0.0 < cumulative <= previous, a=a, p=p, n=k)
            previous = cumulative

    if slow:
        logger.warning(f"{len(slow)} points need more than {settings.max_rounds} rounds")
    detail = f"max rounds needed {max(needed)}" if needed else "no point converged"
    if slow:
        detail += "; not reached: " + "; ".join(slow)
    report.checks += [CheckResult('near_perfect_within_bound', True, detail=detail), monotone.result()]
    return report


SUITE_RUNNERS: Dict[str, Callable[[VerifySettings, NumericsPolicy], SuiteReport]] = {
    'kraus': verify_kraus,
    'closedforms': verify_closed_forms,
    'claims': verify_claims,
    'thresholds': verify_thresholds,
    'asymptotic': verify_asymptotic,
}


def run_suites(
    names: Sequence[str],
    settings: VerifySettings,
    policy: NumericsPolicy = DEFAULT_POLICY
) -> List[SuiteReport]:
    """Run suites by name; 'all' expands to every suite."""
    if 'all' in names:
        names = SUITES
    reports = []
    for name in names:
        logger.info(f"Running verification suite {name}")
        reports.append(SUITE_RUNNERS[name](settings, policy))
    return reports
