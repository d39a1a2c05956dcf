"""
Swapurify Measurements

Exact (all-branch) Bell measurements on a qubit pair, weak measurements on
a single qubit, and the Pauli-frame correction for minus-sign Bell outcomes.
"""

import logging
from typing import List, Tuple

import numpy as np

from qmat import DEFAULT_POLICY, NumericsPolicy, embed, partial_trace
from states import BellLabel, DensityMatrix, bell
from .models import MeasurementError, MeasurementOutcome, WeakMeasurement, WeakSign

logger = logging.getLogger(__name__)

PAULI_Z = np.diag([1.0, -1.0]).astype(complex)


def _normalized(unnormalized: np.ndarray, probability: float, n_qubits: int, atol: float) -> DensityMatrix:
    m = unnormalized / probability
    m = (m + np.conj(m).T) / 2
    return DensityMatrix(n_qubits, m, atol=atol)


def _check_qubit(rho: DensityMatrix, q: int) -> None:
    if not 0 <= q < rho.n_qubits:
        raise MeasurementError(
            f"Qubit {q} out of range for {rho.n_qubits} qubits",
            f"Valid indices are 0..{rho.n_qubits - 1}"
        )


def bell_measure(
    rho: DensityMatrix,
    qubit_pair: Tuple[int, int],
    policy: NumericsPolicy = DEFAULT_POLICY
) -> List[MeasurementOutcome]:
    """
    Projective Bell measurement on two qubits, all four branches.

    Args:
        rho: Register state with at least two qubits
        qubit_pair: The measured qubits (order does not matter)
        policy: Tolerances; branches with probability <= atol are flagged

    Returns:
        Outcomes in the order Phi+, Phi-, Psi+, Psi-. Each post_state is
        the reduced state of the unmeasured qubits in register order; for
        a two-qubit register it is the projected pair itself.

    Raises:
        MeasurementError: On bad or repeated indices
    """
    if not isinstance(rho, DensityMatrix):
        raise MeasurementError("bell_measure needs a DensityMatrix")
    if rho.n_qubits < 2:
        raise MeasurementError("Bell measurement needs at least two qubits")
    i, j = qubit_pair
    _check_qubit(rho, i)
    _check_qubit(rho, j)
    if i == j:
        raise MeasurementError(f"Bell measurement needs two distinct qubits, got ({i}, {j})")

    n = rho.n_qubits
    rest = [q for q in range(n) if q not in (i, j)]
    outcomes = []
    for label in BellLabel:
        vec = bell(label).amplitudes
        projector = embed(np.outer(vec, np.conj(vec)), [i, j], n)
        unnormalized = projector @ rho.matrix @ projector
        probability = float(np.trace(unnormalized).real)

        if probability <= policy.atol:
            outcomes.append(MeasurementOutcome(label.value, max(probability, 0.0), None))
            continue

        if rest:
            reduced = partial_trace(unnormalized, n, rest)
            post = _normalized(reduced, probability, len(rest), rho.atol)
        else:
            post = _normalized(unnormalized, probability, n, rho.atol)
        outcomes.append(MeasurementOutcome(label.value, probability, post))

    summary = ", ".join(f"{o.label}={o.probability:.6g}" for o in outcomes)
    logger.debug(f"Bell measurement on ({i}, {j}): {summary}")
    return outcomes


def weak_measure(
    rho: DensityMatrix,
    target: int,
    b: float,
    policy: NumericsPolicy = DEFAULT_POLICY
) -> List[MeasurementOutcome]:
    """
    Weak measurement M+/M- of strength b on one qubit.

    Returns:
        [M+ outcome, M- outcome]

    Raises:
        MeasurementError: If b is not strictly inside (0, 1) or the target
            is out of range
    """
    weak = WeakMeasurement(b)
    _check_qubit(rho, target)

    outcomes = []
    for sign in WeakSign:
        op = embed(weak.operator(sign), [target], rho.n_qubits)
        unnormalized = op @ rho.matrix @ np.conj(op).T
        probability = float(np.trace(unnormalized).real)
        if probability <= policy.atol:
            outcomes.append(MeasurementOutcome(sign.value, max(probability, 0.0), None))
        else:
            post = _normalized(unnormalized, probability, rho.n_qubits, rho.atol)
            outcomes.append(MeasurementOutcome(sign.value, probability, post))
    return outcomes


def frame_correct(outcome: MeasurementOutcome) -> MeasurementOutcome:
    """
    Map a minus-sign Bell outcome onto its plus form.

    Z on the last remaining qubit turns Psi- into Psi+ (and Phi- into Phi+)
    coherences while leaving populations alone. Plus outcomes and invalid
    branches are returned unchanged.
    """
    label = BellLabel.parse(outcome.label)
    if not label.is_minus or not outcome.is_valid:
        return outcome
    state = outcome.post_state
    z = embed(PAULI_Z, [state.n_qubits - 1], state.n_qubits)
    corrected = DensityMatrix(state.n_qubits, z @ state.matrix @ z, atol=state.atol)
    return MeasurementOutcome(outcome.label, outcome.probability, corrected)
