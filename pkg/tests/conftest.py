import numpy as np
import pytest

from qudit_steering import DensityMatrix, XState

PAULI = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


@pytest.fixture
def rng():
    return np.random.default_rng(20091005)


def random_density(rng, rank=None) -> DensityMatrix:
    rank = rank or int(rng.integers(1, 5))
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


def random_xstate(rng, overshoot=1.0) -> XState:
    """Normalised X-state; off-diagonal moduli up to ``overshoot`` times the PSD limit."""
    d = rng.dirichlet(np.ones(4))
    u, v = rng.uniform(0, overshoot, size=2)
    a, b = rng.uniform(0, 2 * np.pi, size=2)
    return XState(
        d[0], d[1], d[2], d[3],
        anti=u * np.sqrt(d[0] * d[3]) * np.exp(1j * a),
        inner=v * np.sqrt(d[1] * d[2]) * np.exp(1j * b),
    )


def pauli_tensor(rho) -> np.ndarray:
    """Reference tensor ``Tr(sigma_i (x) sigma_j rho)``."""
    a = rho.entries if isinstance(rho, DensityMatrix) else rho
    return np.array([[np.trace(np.kron(si, sj) @ a).real for sj in PAULI] for si in PAULI])
