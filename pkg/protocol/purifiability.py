"""
Swapurify Purifiability Predicate

Checks whether a two-qubit state lies in a three-dimensional subspace the
protocol can handle and satisfies rho22 rho33 = rho23 rho32.
"""

from qmat import DEFAULT_POLICY, NumericsPolicy
from states import DensityMatrix
from .models import ConfigError, PurifiabilityCheck

# rho22, rho33 in 1-based matrix notation are the |01> and |10> entries
INDEX_01 = 1
INDEX_10 = 2


def purifiability_condition(
    rho: DensityMatrix,
    policy: NumericsPolicy = DEFAULT_POLICY
) -> PurifiabilityCheck:
    """
    Evaluate the purifiability condition.

    The state must be supported on span{|00>,|01>,|10>} (no |11>
    population) or span{|01>,|10>,|11>} (no |00> population), and the
    |01>,|10> block must have zero determinant.
    """
    if rho.n_qubits != 2:
        raise ConfigError("Purifiability is defined for two-qubit states")

    m = rho.matrix
    lhs = complex(m[INDEX_01, INDEX_01] * m[INDEX_10, INDEX_10])
    rhs = complex(m[INDEX_01, INDEX_10] * m[INDEX_10, INDEX_01])

    if abs(m[3, 3]) <= policy.atol:
        subspace = "00,01,10"
    elif abs(m[0, 0]) <= policy.atol:
        subspace = "01,10,11"
    else:
        subspace = None

    holds = subspace is not None and abs(lhs - rhs) <= policy.atol
    return PurifiabilityCheck(holds=holds, lhs=lhs, rhs=rhs, subspace=subspace)
