"""
Swapurify Protocol Models

Configuration, per-round results and errors for the swapping protocol.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Optional, Tuple

from measure import WeakSign
from states import ALL_LABELS, PHI_LABELS, PSI_LABELS, BellLabel, DensityMatrix


class ProtocolError(ValueError):
    """Base exception for protocol failures."""

    def __init__(self, message: str, suggestion: Optional[str] = None):
        """
        Initialize protocol error.

        Args:
            message: Error message
            suggestion: Optional hint for the caller
        """
        self.message = message
        self.suggestion = suggestion
        super().__init__(message)

    def __str__(self) -> str:
        """String representation."""
        if self.suggestion:
            return f"{self.message}\n{self.suggestion}"
        return self.message


class ConfigError(ProtocolError):
    """Raised for invalid parameter combinations."""


class NoEntanglementError(ProtocolError):
    """Raised when the input pairs carry no entanglement to purify."""


class DegenerateBranchError(ProtocolError):
    """Raised when every requested branch has zero probability."""


class Family(Enum):
    """Initial pair families."""
    PHI = "phi"              # sqrt(a)|01> + sqrt(1-a)|10>, second pair flipped
    PHI_ASYM = "phi-asym"    # second pair uses a' instead of a
    CHI = "chi"              # sqrt(A)|00> + sqrt(1-A)|11>


class WeakPolicy(Enum):
    """Weak outcomes kept on (qubit A of copy 1, qubit C of copy 2)."""
    BOTH_PLUS = "pp"
    BOTH_MINUS = "mm"
    MIXED = "pm"
    MIXED_SWAPPED = "mp"
    NONE = "none"

    @property
    def signs(self) -> Optional[Tuple[WeakSign, WeakSign]]:
        """(first, second) kept signs, or None when no weak step is taken."""
        return {
            WeakPolicy.BOTH_PLUS: (WeakSign.PLUS, WeakSign.PLUS),
            WeakPolicy.BOTH_MINUS: (WeakSign.MINUS, WeakSign.MINUS),
            WeakPolicy.MIXED: (WeakSign.PLUS, WeakSign.MINUS),
            WeakPolicy.MIXED_SWAPPED: (WeakSign.MINUS, WeakSign.PLUS),
            WeakPolicy.NONE: None,
        }[self]

    @property
    def is_uniform(self) -> bool:
        return self in (WeakPolicy.BOTH_PLUS, WeakPolicy.BOTH_MINUS)


ACCEPT_SETS: Dict[str, FrozenSet[BellLabel]] = {
    'psi': PSI_LABELS,
    'phi': PHI_LABELS,
    'all': ALL_LABELS,
}


def merged_label(labels) -> str:
    """Display label for a set of accepted Bell outcomes, e.g. 'Psi±'."""
    labels = frozenset(labels)
    if labels == PSI_LABELS:
        return "Psi±"
    if labels == PHI_LABELS:
        return "Phi±"
    return "|".join(sorted(label.value for label in labels))


def _in_unit(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ConfigError(f"{name} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class ProtocolConfig:
    """
    Parameters of one protocol run.

    Attributes:
        family: Pair family
        a: phi weight on |01>
        a_prime: second pair's weight (phi-asym only)
        A: chi weight on |00>
        p: damping probability
        b: weak-measurement strength
        rounds: number of swap rounds
        weak_policy: weak outcomes kept before rounds >= 2
        accepted_bell: Bell outcomes Bob accepts
        flip_second: prepare the second phi pair in flipped form
        finish_with_weak: weak-measure A and C after the last swap
        p_per_qubit: optional (p on first qubit, p on second qubit) of each
            pair, overriding p
    """
    family: Family = Family.PHI
    a: float = 0.3
    a_prime: Optional[float] = None
    A: float = 0.9
    p: float = 0.1
    b: float = 0.22
    rounds: int = 1
    weak_policy: WeakPolicy = WeakPolicy.BOTH_PLUS
    accepted_bell: FrozenSet[BellLabel] = PSI_LABELS
    flip_second: bool = True
    finish_with_weak: bool = False
    p_per_qubit: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        for name in ('a', 'A', 'p'):
            _in_unit(name, getattr(self, name))
        if self.family is Family.PHI_ASYM:
            if self.a_prime is None:
                raise ConfigError("phi-asym needs a_prime", "Pass --a-prime")
            _in_unit("a_prime", self.a_prime)
        if self.p_per_qubit is not None:
            if len(self.p_per_qubit) != 2:
                raise ConfigError("p_per_qubit needs exactly two values")
            for value in self.p_per_qubit:
                _in_unit("p_per_qubit", value)
        if self.rounds < 1:
            raise ConfigError(f"rounds must be at least 1, got {self.rounds}")
        if not self.accepted_bell:
            raise ConfigError("At least one Bell outcome must be accepted")
        if self.needs_weak and not 0.0 < self.b < 1.0:
            raise ConfigError(
                f"b must be in (0, 1), got {self.b}",
                "b = 0 or 1 makes the weak measurement projective"
            )
        if self.finish_with_weak and self.weak_policy is WeakPolicy.NONE:
            raise ConfigError("finish_with_weak needs a weak policy other than none")

    @property
    def needs_weak(self) -> bool:
        """True when some step of the run performs a weak measurement."""
        uses_rounds = self.rounds >= 2 and self.weak_policy is not WeakPolicy.NONE
        return uses_rounds or self.finish_with_weak

    @property
    def second_weight(self) -> float:
        """Weight parameter of the second pair."""
        if self.family is Family.PHI_ASYM:
            return self.a_prime
        return self.A if self.family is Family.CHI else self.a

    def damping_pair(self) -> Tuple[float, float]:
        """Damping applied to (first, second) qubit of each pair."""
        return self.p_per_qubit or (self.p, self.p)

    def to_dict(self) -> Dict[str, Any]:
        """Plain-dict form for JSON output."""
        return {
            'family': self.family.value,
            'a': self.a,
            'a_prime': self.a_prime,
            'A': self.A,
            'p': self.p,
            'b': self.b,
            'rounds': self.rounds,
            'weak_policy': self.weak_policy.value,
            'accepted_bell': sorted(label.value for label in self.accepted_bell),
            'flip_second': self.flip_second,
            'finish_with_weak': self.finish_with_weak,
        }


@dataclass(frozen=True, eq=False)
class RoundResult:
    """
    Record of one protocol stage.

    Attributes:
        round_index: 1-based round number
        branch_label: Accepted outcome(s), e.g. 'Psi±' or 'Psi± M+,M+'
        state: Alice-Charlie state after the stage
        concurrence: Concurrence of that state
        branch_probability: Probability of this stage's accepted branch
            given its inputs
        cumulative_probability: Probability of reaching this state from
            fresh pairs, counting every copy consumed
        weak_probability: Joint probability of the weak steps taken in this
            stage, over both copies (1 when none was taken)
        expected_pairs_consumed: Expected fresh noisy pairs per output
    """
    round_index: int
    branch_label: str
    state: DensityMatrix
    concurrence: float
    branch_probability: float
    cumulative_probability: float
    weak_probability: float = 1.0
    expected_pairs_consumed: float = field(default=2.0)

    def to_dict(self) -> Dict[str, Any]:
        """Plain-dict form for JSON output."""
        return {
            'round': self.round_index,
            'branch': self.branch_label,
            'concurrence': self.concurrence,
            'branch_probability': self.branch_probability,
            'cumulative_probability': self.cumulative_probability,
            'weak_probability': self.weak_probability,
            'expected_pairs_consumed': self.expected_pairs_consumed,
            'state': self.state.flat_entries(),
        }


@dataclass(frozen=True)
class PurifiabilityCheck:
    """
    Result of the rho22 rho33 = rho23 rho32 test.

    Attributes:
        holds: True when the state sits in a matching subspace and the
            condition is met within tolerance
        lhs: rho22 * rho33 (entries over |01>, |10>)
        rhs: rho23 * rho32
        subspace: '00,01,10', '01,10,11', or None when neither matches
    """
    holds: bool
    lhs: complex
    rhs: complex
    subspace: Optional[str]
