"""
Swapurify Closed Forms

Analytic concurrences and branch probabilities for the swapping protocol.
These are cross-checked against the simulator in the test suite and by
`verify closedforms`; they are never the only source of a number.

Parameters follow one convention throughout:
    a      weight of |01> in the phi pair sqrt(a)|01> + sqrt(1-a)|10>
    a2     the second pair's weight (asymmetric phi family)
    A      weight of |00> in the chi pair sqrt(A)|00> + sqrt(1-A)|11>
    p      amplitude-damping probability
    b      weak-measurement strength
"""

import math
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.special import expit

from .concurrence import ConcurrenceError, x_state_concurrence

# Weak-measurement sign patterns on (qubit A of copy 1, qubit C of copy 2)
SIGN_PATTERNS = ('pp', 'mm', 'pm', 'mp')


def _open_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 < value < 1.0:
        raise ConcurrenceError(
            f"{name} must lie strictly between 0 and 1, got {value}",
            "There is no entanglement to purify at the boundary"
        )
    return value


def _damping(p: float) -> float:
    p = float(p)
    if not 0.0 <= p < 1.0:
        raise ConcurrenceError(f"Damping probability must be in [0, 1), got {p}")
    return p


# ---------------------------------------------------------------------------
# Phi family, single swap
# ---------------------------------------------------------------------------

def concurrence_ab_phi(a: float, p: float) -> float:
    """Concurrence of a damped phi pair: 2(1-p) sqrt(a(1-a))."""
    return 2.0 * (1.0 - p) * math.sqrt(a * (1.0 - a))


def normalization_phi_round1(a: float, p: float) -> float:
    """N = 2(1-p)^2 a(1-a) + 2p(1-p)a, the combined Psi+/Psi- probability."""
    return 2.0 * (1.0 - p) ** 2 * a * (1.0 - a) + 2.0 * p * (1.0 - p) * a


def probability_phi_round1(a: float, p: float) -> float:
    """Probability of one Psi outcome (Psi+ or Psi-) in the first swap: N/2."""
    return normalization_phi_round1(a, p) / 2.0


def concurrence_phi_round1(a: float, p: float) -> float:
    """
    Concurrence after one swap on the Psi branch: (2/N)(1-p)^2 a(1-a).

    Raises:
        ConcurrenceError: For a outside (0, 1) or p outside [0, 1)
    """
    a = _open_unit("a", a)
    p = _damping(p)
    return 2.0 * (1.0 - p) ** 2 * a * (1.0 - a) / normalization_phi_round1(a, p)


def weak_probability_phi(a: float, p: float, b: float) -> float:
    """
    Probability of M+ on qubit A of the first-swap state.

    p' = (2p(1-p)ab + (1-p)^2 a(1-a)) / N
    """
    a = _open_unit("a", a)
    p = _damping(p)
    b = _open_unit("b", b)
    numerator = 2.0 * p * (1.0 - p) * a * b + (1.0 - p) ** 2 * a * (1.0 - a)
    return numerator / normalization_phi_round1(a, p)


def concurrence_phi_asym(a: float, a2: float, p: float) -> float:
    """Concurrence after swapping pairs with different weights a and a2."""
    a = _open_unit("a", a)
    a2 = _open_unit("a'", a2)
    p = _damping(p)
    coherence = (1.0 - p) ** 2 * math.sqrt(a * a2 * (1.0 - a) * (1.0 - a2))
    return 2.0 * coherence / normalization_phi_asym(a, a2, p)


def normalization_phi_asym(a: float, a2: float, p: float) -> float:
    """M = p(1-p)(a+a2) + (1-p)^2 (a2(1-a) + a(1-a2))."""
    return p * (1.0 - p) * (a + a2) + (1.0 - p) ** 2 * (a2 * (1.0 - a) + a * (1.0 - a2))


def probability_phi_asym(a: float, a2: float, p: float) -> float:
    """Probability of one Psi outcome for the asymmetric pairs: M/2."""
    return normalization_phi_asym(a, a2, p) / 2.0


# ---------------------------------------------------------------------------
# Phi family, second round
# ---------------------------------------------------------------------------

def _round1_ratio(a: float, p: float) -> float:
    """r = p / ((1-p)(1-a)): |00> weight over the Psi weight after one swap."""
    return p / ((1.0 - p) * (1.0 - a))


def concurrence_phi_round2(a: float, p: float, b: float, signs: str = 'pp') -> float:
    """
    Concurrence after the second round.

    Args:
        a, p, b: Pair weight, damping, weak strength
        signs: Kept weak outcomes on (A of copy 1, C of copy 2):
            'pp' both M+, 'mm' both M-, 'pm'/'mp' mixed

    Returns:
        Concurrence of the Psi-branch state

    Raises:
        ConcurrenceError: For out-of-range parameters or unknown signs
    """
    a = _open_unit("a", a)
    p = _damping(p)
    b = _open_unit("b", b)
    if signs not in SIGN_PATTERNS:
        raise ConcurrenceError(f"Unknown sign pattern {signs!r}", f"Use one of {', '.join(SIGN_PATTERNS)}")

    if signs in ('pm', 'mp'):
        r = _round1_ratio(a, p)
        cross = b * (1.0 - b)
        return 2.0 * cross / (4.0 * r * cross + b ** 2 + (1.0 - b) ** 2)

    if signs == 'mm':
        b = 1.0 - b
    coherent = 2.0 * b * (1.0 - b) * (1.0 - p) ** 4 * a ** 2 * (1.0 - a) ** 2
    vacuum = 4.0 * p * (1.0 - p) ** 3 * b ** 2 * a ** 2 * (1.0 - a)
    return coherent / (vacuum + coherent)


def probability_phi_round2(a: float, p: float, b: float) -> float:
    """
    Probability of reaching one Psi outcome in round two with both M+.

    Counts both copies' first swap (Psi+ or Psi-), both M+ results, and a
    single accepted Bell outcome in the second swap.
    """
    a = _open_unit("a", a)
    p = _damping(p)
    b = _open_unit("b", b)
    return (
        2.0 * p * (1.0 - p) ** 3 * b ** 2 * a ** 2 * (1.0 - a)
        + b * (1.0 - b) * (1.0 - p) ** 4 * a ** 2 * (1.0 - a) ** 2
    )


def tradeoff_product(a: float, p: float, b: float) -> float:
    """b(1-b)(1-p)^4 a^2 (1-a)^2, the value of C2 * p2."""
    return b * (1.0 - b) * (1.0 - p) ** 4 * a ** 2 * (1.0 - a) ** 2


def round2_gain(a: float, p: float, b: float) -> float:
    """
    C2 - C1 for both M+.

    Equals p(1-a)(1-p)(1-3b) / ((1 + a(p-1)) ((1-b)(1-p)(1-a) + 2bp)), so
    it is positive exactly when b < 1/3 (for p > 0).
    """
    a = _open_unit("a", a)
    p = _damping(p)
    b = _open_unit("b", b)
    first = 1.0 + a * (p - 1.0)
    second = (1.0 - b) * (1.0 - p) * (1.0 - a) + 2.0 * b * p
    return p * (1.0 - a) * (1.0 - p) * (1.0 - 3.0 * b) / (first * second)


# ---------------------------------------------------------------------------
# Phi family, n rounds (both M+, Psi branch)
# ---------------------------------------------------------------------------

def _roundn_exponents(n: int) -> Tuple[Dict[str, int], Dict[str, int]]:
    """Integer exponents of (2, p, b, 1-b, 1-p, a, 1-a) in a_n and b_n."""
    half = 2 ** (n - 1)
    vacuum = {'2': n, 'p': 1, 'b': half + n - 2, '1-b': half - n,
              '1-p': 2 * half - 1, 'a': half, '1-a': half - 1}
    coherent = {'2': 0, 'p': 0, 'b': half - 1, '1-b': half - 1,
                '1-p': 2 * half, 'a': half, '1-a': half}
    return vacuum, coherent


def _check_rounds(n: int) -> int:
    if int(n) != n or n < 1:
        raise ConcurrenceError(f"Round count must be a positive integer, got {n}")
    return int(n)


def roundn_weights(a: float, p: float, b: float, n: int) -> Tuple[float, float]:
    """
    (a_n, b_n) such that the n-round state is (a_n|00><00| + 2b_n|Psi><Psi|)/N_n.

    Underflows for large n; use concurrence_phi_roundn there.
    """
    n = _check_rounds(n)
    bases = {'2': 2.0, 'p': p, 'b': b, '1-b': 1.0 - b, '1-p': 1.0 - p, 'a': a, '1-a': 1.0 - a}
    vacuum, coherent = _roundn_exponents(n)
    a_n = math.prod(bases[k] ** e for k, e in vacuum.items())
    b_n = math.prod(bases[k] ** e for k, e in coherent.items())
    return a_n, b_n


def log_roundn_ratio(a: float, p: float, b: float, n: int) -> float:
    """
    log(a_n / (2 b_n)), with the exponent difference taken in exact
    integer arithmetic so large n stays accurate.
    """
    n = _check_rounds(n)
    vacuum, coherent = _roundn_exponents(n)
    coherent = dict(coherent, **{'2': coherent['2'] + 1})
    logs = {'2': math.log(2.0), 'p': math.log(p), 'b': math.log(b), '1-b': math.log1p(-b),
            '1-p': math.log1p(-p), 'a': math.log(a), '1-a': math.log1p(-a)}
    return sum((vacuum[k] - coherent[k]) * logs[k] for k in logs)


def concurrence_phi_roundn(a: float, p: float, b: float, n: int) -> float:
    """
    Concurrence 2b_n / (a_n + 2b_n) after n rounds, both M+, Psi branch.

    Computed as expit(-log(a_n / 2b_n)) so it never overflows.
    """
    a = _open_unit("a", a)
    p = _damping(p)
    b = _open_unit("b", b)
    n = _check_rounds(n)
    if p == 0.0:
        return 1.0
    return float(expit(-log_roundn_ratio(a, p, b, n)))


def cumulative_probability_phi(a: float, p: float, b: float, n: int, signs: str = 'pp') -> float:
    """
    Probability of producing one n-round output from fresh pairs, with
    Psi+ and Psi- both accepted in every swap and both copies' weak steps
    counted. signs is 'pp' or 'mm'.
    """
    a = _open_unit("a", a)
    p = _damping(p)
    n = _check_rounds(n)
    if signs not in ('pp', 'mm'):
        raise ConcurrenceError(f"No closed-form accounting for sign pattern {signs!r}")
    kept = _open_unit("b", b) if signs == 'pp' else 1.0 - _open_unit("b", b)

    cumulative = normalization_phi_round1(a, p)
    ratio = _round1_ratio(a, p)
    for _ in range(2, n + 1):
        vacuum, coherent = ratio / (1.0 + ratio), 1.0 / (1.0 + ratio)
        weak = vacuum * kept + coherent / 2.0
        vacuum, coherent = vacuum * kept / weak, coherent / (2.0 * weak)
        swap = 2.0 * (vacuum * coherent * kept + coherent ** 2 * kept * (1.0 - kept))
        cumulative = cumulative ** 2 * weak ** 2 * swap
        ratio = vacuum / (coherent * (1.0 - kept))
    return cumulative


def rounds_to_reach(a: float, p: float, b: float, target: float, max_rounds: int = 40) -> Optional[int]:
    """Smallest n <= max_rounds with concurrence_phi_roundn > target, else None."""
    for n in range(1, max_rounds + 1):
        if concurrence_phi_roundn(a, p, b, n) > target:
            return n
    return None


# ---------------------------------------------------------------------------
# Chi family
# ---------------------------------------------------------------------------

def _chi_entries(A: float, p: float) -> Tuple[float, float, float, float]:
    """(r00, r01 = r10, r11, coherence) of the damped chi pair."""
    return (
        A + (1.0 - A) * p ** 2,
        (1.0 - A) * p * (1.0 - p),
        (1.0 - A) * (1.0 - p) ** 2,
        (1.0 - p) * math.sqrt(A * (1.0 - A)),
    )


def concurrence_chi_ab(A: float, p: float) -> float:
    """
    Concurrence of the damped chi pair, read off its X-state entries.

    Equals 2(1-p) max(0, sqrt(A(1-A)) - (1-A)p).
    """
    A = _open_unit("A", A)
    p = _damping(p)
    d0, d1, d3, coherence = _chi_entries(A, p)
    m = np.diag([d0, d1, d1, d3])
    m[0, 3] = m[3, 0] = coherence
    return x_state_concurrence(m)


def probability_chi_swap(A: float, p: float) -> float:
    """
    Probability of one Psi outcome when swapping two damped chi pairs.

    q(1-q) with q = (1-A)(1-p), the chance Bob's qubit is still excited.
    """
    q = (1.0 - A) * (1.0 - p)
    return q * (1.0 - q)


def _chi_swap_concurrence(A: float, p: float, b: Optional[float]) -> float:
    d0, d1, d3, c = _chi_entries(A, p)
    wa, wb = (1.0, 1.0) if b is None else (b, 1.0 - b)
    cross = wa * wb
    populations = 2.0 * cross * (d0 * d3 + d1 ** 2) + 2.0 * wa ** 2 * d0 * d1 + 2.0 * wb ** 2 * d1 * d3
    if populations <= 0.0:
        raise ConcurrenceError("Chi swap branch has zero probability")
    return max(0.0, 2.0 * cross * (c ** 2 - 2.0 * d1 * math.sqrt(d0 * d3))) / populations


def concurrence_chi_ac(A: float, p: float) -> float:
    """Concurrence after swapping two damped chi pairs (Psi branch)."""
    A = _open_unit("A", A)
    p = _damping(p)
    return _chi_swap_concurrence(A, p, None)


def concurrence_chi_ac_weak(A: float, p: float, b: float) -> float:
    """Concurrence of the chi swap state after M+ on both A and C."""
    A = _open_unit("A", A)
    p = _damping(p)
    b = _open_unit("b", b)
    return _chi_swap_concurrence(A, p, b)


def weak_probability_chi(A: float, p: float, b: float) -> float:
    """Probability of M+ on both A and C of the chi swap state."""
    A = _open_unit("A", A)
    p = _damping(p)
    b = _open_unit("b", b)
    d0, d1, d3, _ = _chi_entries(A, p)
    total = 2.0 * (d0 * d3 + d1 ** 2) + 2.0 * d0 * d1 + 2.0 * d1 * d3
    weighted = 2.0 * b * (1.0 - b) * (d0 * d3 + d1 ** 2) + 2.0 * b ** 2 * d0 * d1 + 2.0 * (1.0 - b) ** 2 * d1 * d3
    return weighted / total
