"""
Swapurify Enhancement Regions

Grid scans for where the protocol raises concurrence, concurrence curves
along the damping axis, and the weak-sign reports for both families.

Scans evaluate grid rows on a thread pool; rows come back in grid order
so output is identical for any worker count.
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from entanglement import (
    ConcurrenceError,
    concurrence_ab_phi,
    concurrence_chi_ab,
    concurrence_chi_ac,
    concurrence_chi_ac_weak,
    concurrence_phi_asym,
    concurrence_phi_round1,
    concurrence_phi_round2,
    concurrence_phi_roundn,
    concurrence_value,
    cumulative_probability_phi,
    normalization_phi_round1,
    probability_chi_swap,
    probability_phi_asym,
    weak_probability_chi,
)
from qmat import DEFAULT_POLICY, NumericsPolicy
from states import PSI_LABELS
from .models import (
    ConfigError,
    DegenerateBranchError,
    Family,
    NoEntanglementError,
    ProtocolConfig,
    WeakPolicy,
)
from .swapping import prepare_noisy_pairs, run_protocol

logger = logging.getLogger(__name__)

AXIS_NAMES = ('a', 'a_prime', 'A', 'p', 'b')


class Method(Enum):
    """How grid points are evaluated."""
    CLOSED_FORM = "closed_form"
    SIMULATE = "simulate"


@dataclass(frozen=True)
class Axis:
    """
    Evenly spaced scan axis.

    Attributes:
        name: ProtocolConfig field being varied
        lo: First value
        hi: Last value
        steps: Number of samples (>= 2)
    """
    name: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ConfigError(f"Unknown axis {self.name!r}", f"Use one of {', '.join(AXIS_NAMES)}")
        if self.steps < 2:
            raise ConfigError(f"Axis {self.name} needs at least 2 steps, got {self.steps}")
        if not self.lo < self.hi:
            raise ConfigError(f"Axis {self.name} needs lo < hi, got {self.lo} >= {self.hi}")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class PointResult:
    """
    Outcome at one grid point.

    Attributes:
        c_initial: Concurrence of the damped input pair(s)
        c_final: Concurrence after the last stage
        enhanced: True when every stage beats the previous one by more
            than compare_tol
        branch_probability: Probability of the accepted path
        chain: Concurrence after each stage
    """
    c_initial: float
    c_final: float
    enhanced: bool
    branch_probability: float
    chain: Tuple[float, ...] = ()


DEGENERATE_POINT = PointResult(0.0, 0.0, False, 0.0)


@dataclass(frozen=True)
class RegionGrid:
    """Scan result, axis1-major."""
    axis1: Axis
    axis2: Axis
    points: Tuple[Tuple[PointResult, ...], ...]

    def mask(self) -> np.ndarray:
        """Boolean enhancement mask, shape (axis1.steps, axis2.steps)."""
        return np.array([[pt.enhanced for pt in row] for row in self.points], dtype=bool)

    def rows(self) -> Iterator[Tuple[float, float, PointResult]]:
        """(axis1 value, axis2 value, point) in axis1-major order."""
        for v1, row in zip(self.axis1.values(), self.points):
            for v2, point in zip(self.axis2.values(), row):
                yield float(v1), float(v2), point


def is_increasing_chain(c_initial: float, chain: Sequence[float], tol: float) -> bool:
    """True when c_initial < chain[0] < chain[1] < ... with margin tol."""
    previous = c_initial
    for value in chain:
        if not value > previous + tol:
            return False
        previous = value
    return bool(chain)


def _closed_form_supported(cfg: ProtocolConfig) -> bool:
    if cfg.accepted_bell != PSI_LABELS or cfg.p_per_qubit is not None or not cfg.flip_second:
        return False
    if cfg.family is Family.PHI:
        return not cfg.finish_with_weak and (cfg.rounds == 1 or cfg.weak_policy.is_uniform)
    if cfg.family is Family.PHI_ASYM:
        return cfg.rounds == 1 and not cfg.finish_with_weak
    return cfg.rounds == 1 and (not cfg.finish_with_weak or cfg.weak_policy is WeakPolicy.BOTH_PLUS)


def _closed_form_chain(cfg: ProtocolConfig) -> Tuple[float, List[float], float]:
    """(initial concurrence, chain, accepted-path probability) from closed forms."""
    a, p, b = cfg.a, cfg.p, cfg.b
    if cfg.family is Family.PHI:
        signs = 'pp' if cfg.weak_policy is WeakPolicy.BOTH_PLUS else 'mm'
        effective_b = b if signs == 'pp' else 1.0 - b
        chain = [concurrence_phi_round1(a, p)]
        chain += [concurrence_phi_roundn(a, p, effective_b, n) for n in range(2, cfg.rounds + 1)]
        if cfg.rounds == 1:
            probability = normalization_phi_round1(a, p)
        else:
            probability = cumulative_probability_phi(a, p, b, cfg.rounds, signs)
        return concurrence_ab_phi(a, p), chain, probability

    if cfg.family is Family.PHI_ASYM:
        initial = max(concurrence_ab_phi(a, p), concurrence_ab_phi(cfg.a_prime, p))
        return initial, [concurrence_phi_asym(a, cfg.a_prime, p)], 2.0 * probability_phi_asym(a, cfg.a_prime, p)

    A = cfg.A
    probability = 2.0 * probability_chi_swap(A, p)
    if cfg.finish_with_weak:
        return concurrence_chi_ab(A, p), [concurrence_chi_ac_weak(A, p, b)], probability * weak_probability_chi(A, p, b)
    return concurrence_chi_ab(A, p), [concurrence_chi_ac(A, p)], probability


def _simulated_chain(cfg: ProtocolConfig, policy: NumericsPolicy) -> Tuple[float, List[float], float]:
    rho_ab, rho_bc = prepare_noisy_pairs(cfg, policy)
    initial = max(concurrence_value(rho_ab, policy), concurrence_value(rho_bc, policy))
    results = run_protocol(cfg, policy, exploratory=True)
    if cfg.finish_with_weak:
        chain = [r.concurrence for r in results[:-2]] + [results[-1].concurrence]
    else:
        chain = [r.concurrence for r in results]
    return initial, chain, results[-1].cumulative_probability


def evaluate_point(
    cfg: ProtocolConfig,
    method: Method = Method.CLOSED_FORM,
    policy: NumericsPolicy = DEFAULT_POLICY
) -> PointResult:
    """
    Evaluate enhancement at one parameter point.

    Closed forms are used when they cover the configuration; otherwise
    the point is simulated. Degenerate points (no entanglement or a
    zero-probability branch) come back as DEGENERATE_POINT.
    """
    try:
        if method is Method.CLOSED_FORM and _closed_form_supported(cfg):
            initial, chain, probability = _closed_form_chain(cfg)
        else:
            initial, chain, probability = _simulated_chain(cfg, policy)
    except (NoEntanglementError, DegenerateBranchError, ConcurrenceError) as e:
        logger.warning(f"Skipping degenerate point {cfg.to_dict()}: {e.message}")
        return DEGENERATE_POINT

    return PointResult(
        c_initial=initial,
        c_final=chain[-1],
        enhanced=is_increasing_chain(initial, chain, policy.compare_tol),
        branch_probability=probability,
        chain=tuple(chain),
    )


def default_threads() -> int:
    """Worker count from SWAPURIFY_THREADS, else the CPU count."""
    value = os.environ.get('SWAPURIFY_THREADS')
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            logger.warning(f"Ignoring invalid SWAPURIFY_THREADS={value!r}")
    return os.cpu_count() or 1


def enhancement_region(
    base: ProtocolConfig,
    axis1: Axis,
    axis2: Axis,
    method: Method = Method.CLOSED_FORM,
    threads: Optional[int] = None,
    policy: NumericsPolicy = DEFAULT_POLICY
) -> RegionGrid:
    """
    Scan a 2-D grid and record where the protocol enhances entanglement.

    Args:
        base: Configuration supplying every parameter not on an axis
        axis1: Outer (row) axis
        axis2: Inner (column) axis
        method: Closed forms where available, or full simulation
        threads: Worker count (default: default_threads())
        policy: Tolerances; compare_tol sets the enhancement margin

    Returns:
        RegionGrid with one PointResult per grid point
    """
    if axis1.name == axis2.name:
        raise ConfigError(f"Both axes vary {axis1.name}", "Pick two different parameters")

    inner = axis2.values()

    def evaluate_row(v1: float) -> Tuple[PointResult, ...]:
        row_base = replace(base, **{axis1.name: float(v1)})
        return tuple(
            evaluate_point(replace(row_base, **{axis2.name: float(v2)}), method, policy)
            for v2 in inner
        )

    workers = threads or default_threads()
    logger.info(f"Scanning {axis1.steps}x{axis2.steps} grid ({method.value}) on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = tuple(pool.map(evaluate_row, axis1.values()))
    return RegionGrid(axis1=axis1, axis2=axis2, points=rows)


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Curve:
    """Columns of concurrence values along the damping axis."""
    columns: Tuple[str, ...]
    rows: Tuple[Tuple[float, ...], ...]


def _guarded(fn: Callable[[], float]) -> float:
    try:
        return fn()
    except (NoEntanglementError, DegenerateBranchError, ConcurrenceError) as e:
        logger.warning(f"Curve point undefined: {e.message}")
        return float('nan')


def phi_curve(
    a: float,
    b: float,
    rounds: Sequence[int],
    p_values: Sequence[float],
    method: Method = Method.CLOSED_FORM,
    policy: NumericsPolicy = DEFAULT_POLICY
) -> Curve:
    """
    Concurrence of the damped pair and of each listed round against p.

    Columns: p, C_rho_AB, C_round<n> for each n in rounds.
    """
    columns = ('p', 'C_rho_AB') + tuple(f"C_round{n}" for n in rounds)
    rows = []
    for p in p_values:
        p = float(p)
        if method is Method.CLOSED_FORM:
            values = [_guarded(lambda: concurrence_phi_roundn(a, p, b, n)) for n in rounds]
        else:
            def simulate() -> List[float]:
                cfg = ProtocolConfig(family=Family.PHI, a=a, p=p, b=b, rounds=max(rounds))
                return [r.concurrence for r in run_protocol(cfg, policy)]
            try:
                chain = simulate()
                values = [chain[n - 1] for n in rounds]
            except (NoEntanglementError, DegenerateBranchError) as e:
                logger.warning(f"Curve point undefined: {e.message}")
                values = [float('nan')] * len(rounds)
        rows.append((p, concurrence_ab_phi(a, p)) + tuple(values))
    return Curve(columns=columns, rows=tuple(rows))


def chi_curve(
    A: float,
    b: float,
    p_values: Sequence[float],
    method: Method = Method.CLOSED_FORM,
    policy: NumericsPolicy = DEFAULT_POLICY
) -> Curve:
    """
    Concurrence of the damped chi pair, its swap, and the swap after the
    weak step, against p.

    Columns: p, C_chi_AB, C_chi_AC, C_chi_AC_weak.
    """
    columns = ('p', 'C_chi_AB', 'C_chi_AC', 'C_chi_AC_weak')
    rows = []
    for p in p_values:
        p = float(p)
        if method is Method.CLOSED_FORM:
            swapped = _guarded(lambda: concurrence_chi_ac(A, p))
            weak = _guarded(lambda: concurrence_chi_ac_weak(A, p, b))
        else:
            cfg = ProtocolConfig(family=Family.CHI, A=A, p=p, b=b, finish_with_weak=True)
            try:
                results = run_protocol(cfg, policy)
                swapped, weak = results[0].concurrence, results[1].concurrence
            except (NoEntanglementError, DegenerateBranchError) as e:
                logger.warning(f"Curve point undefined: {e.message}")
                swapped = weak = float('nan')
        rows.append((p, _guarded(lambda: concurrence_chi_ab(A, p)), swapped, weak))
    return Curve(columns=columns, rows=tuple(rows))


# ---------------------------------------------------------------------------
# Weak-sign thresholds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdEntry:
    """Second-round result for one weak sign pattern."""
    weak_policy: WeakPolicy
    c_round2: float
    c_round2_closed: float
    enhanced: bool


@dataclass(frozen=True)
class ThresholdReport:
    """Second round versus first round for all four sign patterns."""
    a: float
    p: float
    b: float
    c_round1: float
    entries: Tuple[ThresholdEntry, ...]

    @property
    def enhancing(self) -> Tuple[WeakPolicy, ...]:
        return tuple(e.weak_policy for e in self.entries if e.enhanced)


SIGN_POLICIES = (WeakPolicy.BOTH_PLUS, WeakPolicy.BOTH_MINUS, WeakPolicy.MIXED, WeakPolicy.MIXED_SWAPPED)


def threshold_checks(
    a: float,
    p: float,
    b: float,
    policy: NumericsPolicy = DEFAULT_POLICY
) -> ThresholdReport:
    """
    Simulate the second round under every weak sign pattern.

    Only both-M+ with b < 1/3 and both-M- with b > 2/3 should enhance.
    """
    c1 = concurrence_phi_round1(a, p)
    entries = []
    for weak_policy in SIGN_POLICIES:
        cfg = ProtocolConfig(family=Family.PHI, a=a, p=p, b=b, rounds=2, weak_policy=weak_policy)
        c2 = run_protocol(cfg, policy, exploratory=True)[-1].concurrence
        entries.append(ThresholdEntry(
            weak_policy=weak_policy,
            c_round2=c2,
            c_round2_closed=concurrence_phi_round2(a, p, b, weak_policy.value),
            enhanced=c2 > c1 + policy.compare_tol,
        ))
    return ThresholdReport(a=a, p=p, b=b, c_round1=c1, entries=tuple(entries))


@dataclass(frozen=True)
class ChiSignReport:
    """Chi swap alone versus the chi swap followed by each weak sign pattern."""
    A: float
    p: float
    b: float
    baseline: PointResult
    entries: Tuple[Tuple[WeakPolicy, PointResult], ...]

    @property
    def gained(self) -> Tuple[WeakPolicy, ...]:
        """Patterns that enhance where the plain swap does not."""
        if self.baseline.enhanced:
            return ()
        return tuple(wp for wp, point in self.entries if point.enhanced)

    @property
    def lost(self) -> Tuple[WeakPolicy, ...]:
        """Patterns that fail where the plain swap enhances."""
        if not self.baseline.enhanced:
            return ()
        return tuple(wp for wp, point in self.entries if not point.enhanced)

    def point(self, weak_policy: WeakPolicy) -> PointResult:
        return dict(self.entries)[weak_policy]


def chi_sign_checks(
    A: float,
    p: float,
    b: float,
    method: Method = Method.SIMULATE,
    policy: NumericsPolicy = DEFAULT_POLICY
) -> ChiSignReport:
    """
    Evaluate the chi swap with a closing weak step under every sign pattern.

    Both-M+ can enlarge the enhancement region for b < 1/2 and both-M-
    for b > 1/2. Mixed signs scale the coherence by b(1-b) but the
    populations by at least that much, so they never enlarge it.
    """
    base = ProtocolConfig(family=Family.CHI, A=A, p=p, b=b)
    baseline = evaluate_point(base, method, policy)
    entries = tuple(
        (wp, evaluate_point(replace(base, weak_policy=wp, finish_with_weak=True), method, policy))
        for wp in SIGN_POLICIES
    )
    return ChiSignReport(A=A, p=p, b=b, baseline=baseline, entries=entries)
