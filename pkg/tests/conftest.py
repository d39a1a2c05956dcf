"""
Swapurify Test Configuration and Shared Fixtures
"""

import os
import sys

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from qmat import DEFAULT_POLICY  # noqa: E402
from states import DensityMatrix  # noqa: E402


SEED = 0xDEADBEEF


def random_density(rng: np.random.Generator, n_qubits: int = 2) -> DensityMatrix:
    """Full-rank random density matrix G G^dagger / tr."""
    dim = 2 ** n_qubits
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ np.conj(g).T
    return DensityMatrix.from_matrix(m / np.trace(m).real)


# ---------------------------------------------------------------------------
# Shared fixtures
# ---------------------------------------------------------------------------

@pytest.fixture
def policy():
    return DEFAULT_POLICY


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def random_states(rng):
    """Twenty seeded random two-qubit states."""
    return [random_density(rng) for _ in range(20)]


@pytest.fixture
def config_yaml(tmp_path):
    """Write a small config file and return its path."""
    filepath = tmp_path / 'config.yaml'
    filepath.write_text(
        "numerics:\n"
        "  compare_tol: 1.0e-8\n"
        "scan:\n"
        "  resolution: 5\n"
        "  threads: 2\n"
        "  curve_points: 4\n"
        "verify:\n"
        "  grid: 3\n"
        "  asymptotic_points: 4\n"
    )
    return filepath


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch, tmp_path):
    """Keep the user's config and thread settings out of tests."""
    monkeypatch.delenv('SWAPURIFY_CONFIG', raising=False)
    monkeypatch.delenv('SWAPURIFY_THREADS', raising=False)
    monkeypatch.chdir(tmp_path)
