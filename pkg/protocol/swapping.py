"""
Swapurify Swapping Protocol

Noisy pair preparation, Bob's Bell measurement, weak-measurement
preprocessing and the multi-round driver.

Register order for a swap is (A, B, B', C): the first pair occupies
qubits 0-1, the second pair qubits 2-3, and Bob measures qubits 1 and 2.
"""

import logging
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from channels import amplitude_damping, apply_local_pair
from entanglement import concurrence_value
from measure import MeasurementOutcome, WeakSign, bell_measure, frame_correct, weak_measure
from qmat import DEFAULT_POLICY, NumericsPolicy
from states import (
    BellLabel,
    DensityMatrix,
    chi_pair,
    phi_pair,
    phi_pair_flipped,
    product_density,
    to_density,
)
from .models import (
    DegenerateBranchError,
    ConfigError,
    Family,
    NoEntanglementError,
    ProtocolConfig,
    RoundResult,
    WeakPolicy,
    merged_label,
)

logger = logging.getLogger(__name__)

BOB_QUBITS = (1, 2)
# Weak targets on a two-qubit Alice-Charlie state
QUBIT_A = 0
QUBIT_C = 1


def _check_entangled(cfg: ProtocolConfig) -> None:
    weights = [cfg.A] if cfg.family is Family.CHI else [cfg.a, cfg.second_weight]
    for weight in weights:
        if weight in (0.0, 1.0):
            raise NoEntanglementError(
                f"Pair weight {weight} gives a product state",
                "Choose a weight strictly between 0 and 1"
            )
    if 1.0 in cfg.damping_pair():
        raise NoEntanglementError("p = 1 damps every pair to |00>")


def prepare_noisy_pairs(
    cfg: ProtocolConfig,
    policy: NumericsPolicy = DEFAULT_POLICY
) -> Tuple[DensityMatrix, DensityMatrix]:
    """
    Send both initial pairs through local amplitude-damping channels.

    Returns:
        (rho_AB, rho_BC)

    Raises:
        NoEntanglementError: For product-state weights or p = 1
    """
    _check_entangled(cfg)
    if cfg.family is Family.CHI:
        first = second = chi_pair(cfg.A)
    else:
        first = phi_pair(cfg.a)
        maker = phi_pair_flipped if cfg.flip_second else phi_pair
        second = maker(cfg.second_weight)

    p_first, p_second = cfg.damping_pair()
    channel = amplitude_damping(p_first, policy)
    other = amplitude_damping(p_second, policy) if p_second != p_first else None

    rho_ab = apply_local_pair(channel, to_density(first, policy), other)
    rho_bc = apply_local_pair(channel, to_density(second, policy), other)
    return rho_ab, rho_bc


def swap_outcomes(
    pairs: Tuple[DensityMatrix, DensityMatrix],
    policy: NumericsPolicy = DEFAULT_POLICY
) -> List[MeasurementOutcome]:
    """All four Bell outcomes of Bob's measurement, reduced to (A, C)."""
    first, second = pairs
    if first.n_qubits != 2 or second.n_qubits != 2:
        raise ConfigError("Swapping needs two two-qubit pairs")
    return bell_measure(product_density(first, second), BOB_QUBITS, policy)


def swap_round(
    pairs: Tuple[DensityMatrix, DensityMatrix],
    accepted: Iterable[BellLabel],
    policy: NumericsPolicy = DEFAULT_POLICY
) -> List[RoundResult]:
    """
    One entanglement swap, one result per accepted outcome.

    States are returned as measured (no Pauli-frame correction).

    Raises:
        DegenerateBranchError: If every accepted outcome has zero probability
    """
    accepted = {BellLabel.parse(label) for label in accepted}
    results = []
    for outcome in swap_outcomes(pairs, policy):
        if BellLabel.parse(outcome.label) not in accepted:
            continue
        if not outcome.is_valid:
            logger.debug(f"Skipping zero-probability outcome {outcome.label}")
            continue
        results.append(RoundResult(
            round_index=1,
            branch_label=outcome.label,
            state=outcome.post_state,
            concurrence=concurrence_value(outcome.post_state, policy),
            branch_probability=outcome.probability,
            cumulative_probability=outcome.probability,
            expected_pairs_consumed=2.0 / outcome.probability,
        ))
    if not results:
        raise DegenerateBranchError(
            "No accepted Bell outcome has nonzero probability",
            f"Accepted: {merged_label(accepted)}"
        )
    return results


def weak_preprocess(
    state: DensityMatrix,
    targets_and_signs: Sequence[Tuple[int, WeakSign]],
    b: float,
    policy: NumericsPolicy = DEFAULT_POLICY
) -> MeasurementOutcome:
    """
    Weak-measure the listed qubits in turn, keeping the given branches.

    Returns:
        Outcome carrying the joint branch probability and the final state

    Raises:
        MeasurementError: If b is not in (0, 1)
        DegenerateBranchError: If a kept branch has zero probability
    """
    probability = 1.0
    current = state
    labels = []
    for target, sign in targets_and_signs:
        plus, minus = weak_measure(current, target, b, policy)
        kept = plus if sign is WeakSign.PLUS else minus
        if not kept.is_valid:
            raise DegenerateBranchError(f"Weak outcome {sign.value} on qubit {target} has zero probability")
        probability *= kept.probability
        current = kept.post_state
        labels.append(sign.value)
    return MeasurementOutcome(",".join(labels), probability, current)


def _merge_accepted(
    pairs: Tuple[DensityMatrix, DensityMatrix],
    accepted,
    policy: NumericsPolicy
) -> Tuple[DensityMatrix, float]:
    """Frame-correct the accepted outcomes and mix them by probability."""
    kept = []
    for outcome in swap_outcomes(pairs, policy):
        if BellLabel.parse(outcome.label) in accepted and outcome.is_valid:
            kept.append(frame_correct(outcome))
    total = sum(o.probability for o in kept)
    if not kept or total <= policy.atol:
        raise DegenerateBranchError(
            "Accepted Bell outcomes have zero probability",
            f"Accepted: {merged_label(accepted)}"
        )
    mixed = sum(o.probability * o.post_state.matrix for o in kept) / total
    mixed = (mixed + np.conj(mixed).T) / 2
    return DensityMatrix(2, mixed, atol=policy.atol), total


def _weak_targets(cfg: ProtocolConfig) -> Tuple[list, list]:
    """Weak-step targets for (copy 1, copy 2) under the configured policy."""
    first, second = cfg.weak_policy.signs
    if cfg.family is Family.CHI:
        both = [(QUBIT_A, first), (QUBIT_C, second)]
        return both, both
    return [(QUBIT_A, first)], [(QUBIT_C, second)]


def run_protocol(
    cfg: ProtocolConfig,
    policy: NumericsPolicy = DEFAULT_POLICY,
    exploratory: bool = False
) -> List[RoundResult]:
    """
    Run the full protocol.

    Round 1 swaps the two noisy pairs. Each later round takes two copies
    of the previous output, applies the weak step to each (qubit A of
    copy 1 and qubit C of copy 2 for the phi families, both qubits of
    each copy for chi), and swaps them. Accepted outcomes are
    frame-corrected and merged into one continuing state.

    Args:
        cfg: Protocol configuration
        policy: Tolerances
        exploratory: Allow phi-family policies that cannot enhance
            (mixed signs or no weak step) for rounds >= 2

    Returns:
        One RoundResult per round, plus one for the closing weak step
        when cfg.finish_with_weak is set

    Raises:
        ConfigError: For a disallowed weak policy
        NoEntanglementError: For degenerate inputs
        DegenerateBranchError: When a required branch has zero probability
    """
    if (cfg.rounds >= 2 and cfg.family is not Family.CHI
            and not cfg.weak_policy.is_uniform and not exploratory):
        raise ConfigError(
            f"Weak policy {cfg.weak_policy.value} cannot purify beyond round 1",
            "Use pp or mm for rounds >= 2"
        )

    accepted = cfg.accepted_bell
    label = merged_label(accepted)
    pairs = prepare_noisy_pairs(cfg, policy)
    state, swap_probability = _merge_accepted(pairs, accepted, policy)
    cumulative = swap_probability
    expected = 2.0 / swap_probability
    results = [RoundResult(
        round_index=1,
        branch_label=label,
        state=state,
        concurrence=concurrence_value(state, policy),
        branch_probability=swap_probability,
        cumulative_probability=cumulative,
        expected_pairs_consumed=expected,
    )]
    logger.debug(f"Round 1: C={results[-1].concurrence:.6g} P={cumulative:.6g}")

    for k in range(2, cfg.rounds + 1):
        if cfg.weak_policy is WeakPolicy.NONE:
            copies = (state, state)
            weights = (1.0, 1.0)
        else:
            targets_1, targets_2 = _weak_targets(cfg)
            first = weak_preprocess(state, targets_1, cfg.b, policy)
            second = weak_preprocess(state, targets_2, cfg.b, policy)
            copies = (first.post_state, second.post_state)
            weights = (first.probability, second.probability)

        state, swap_probability = _merge_accepted(copies, accepted, policy)
        cumulative = cumulative ** 2 * weights[0] * weights[1] * swap_probability
        expected = (expected / weights[0] + expected / weights[1]) / swap_probability
        results.append(RoundResult(
            round_index=k,
            branch_label=label,
            state=state,
            concurrence=concurrence_value(state, policy),
            branch_probability=swap_probability,
            cumulative_probability=cumulative,
            weak_probability=weights[0] * weights[1],
            expected_pairs_consumed=expected,
        ))
        logger.debug(f"Round {k}: C={results[-1].concurrence:.6g} P={cumulative:.6g}")

    if cfg.finish_with_weak:
        first, second = cfg.weak_policy.signs
        outcome = weak_preprocess(state, [(QUBIT_A, first), (QUBIT_C, second)], cfg.b, policy)
        cumulative *= outcome.probability
        results.append(RoundResult(
            round_index=cfg.rounds,
            branch_label=f"{label} {outcome.label}",
            state=outcome.post_state,
            concurrence=concurrence_value(outcome.post_state, policy),
            branch_probability=outcome.probability,
            cumulative_probability=cumulative,
            weak_probability=outcome.probability,
            expected_pairs_consumed=expected / outcome.probability,
        ))

    return results
