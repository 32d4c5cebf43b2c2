"""Correlation tensor of a 4x4 state and maximisation of its bilinear form.

``E(m, n) = sum_ij T_ij m_i n_j`` over unit vectors ``m`` and ``n`` is
maximised by the leading singular pair of ``T``; the largest singular value
is obtained from the eigen-decomposition of ``T^T T`` with the same Jacobi
routine used for density matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .state import DEFAULT_TOL, DensityMatrix, InvalidInputError, jacobi_eigh

IMAG_TOL = 1e-9
UNIT_TOL = 1e-9


class InconsistencyError(InvalidInputError):
    """Tensor entries came out complex, so the input was not Hermitian."""


@dataclass(frozen=True)
class CorrelationTensor:
    t: np.ndarray

    def __post_init__(self):
        arr = np.array(self.t, dtype=float)
        if arr.shape != (3, 3):
            raise InvalidInputError(f"correlation tensor must be 3x3, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "t", arr)

    def __getitem__(self, ij):
        return self.t[ij]

    @property
    def T(self) -> CorrelationTensor:
        return CorrelationTensor(self.t.T)

    def __eq__(self, other):
        if not isinstance(other, CorrelationTensor):
            return NotImplemented
        return np.array_equal(self.t, other.t)

    def __hash__(self):
        return hash(self.t.tobytes())


@dataclass(frozen=True)
class BlochVector:
    m1: float
    m2: float
    m3: float

    def __post_init__(self):
        norm = math.sqrt(self.m1**2 + self.m2**2 + self.m3**2)
        if not math.isfinite(norm) or abs(norm - 1.0) > UNIT_TOL:
            raise InvalidInputError(f"Bloch vector must have unit length, got |m|={norm}")

    @classmethod
    def from_array(cls, v) -> BlochVector:
        v = np.asarray(v, dtype=float)
        return cls(float(v[0]), float(v[1]), float(v[2]))

    def __array__(self, dtype=None, copy=None):
        return np.array([self.m1, self.m2, self.m3], dtype=dtype)

    def __neg__(self):
        return BlochVector(-self.m1, -self.m2, -self.m3)


@dataclass(frozen=True)
class MaxCorrelation:
    value: float
    m_star: BlochVector
    n_star: BlochVector


def correlation_tensor(rho) -> CorrelationTensor:
    """Nine Pauli-pair combinations of the matrix entries, indexed from 1 as ``r(i, j)``."""
    a = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)

    def r(i, j):
        return a[i - 1, j - 1]

    raw = np.array(
        [
            [
                r(1, 4) + r(2, 3) + r(3, 2) + r(4, 1),
                (r(1, 4) - r(2, 3) + r(3, 2) - r(4, 1)) * 1j,
                r(1, 3) - r(2, 4) + r(3, 1) - r(4, 2),
            ],
            [
                (r(1, 4) + r(2, 3) - r(3, 2) - r(4, 1)) * 1j,
                r(2, 3) - r(1, 4) + r(3, 2) - r(4, 1),
                (r(1, 3) - r(2, 4) - r(3, 1) + r(4, 2)) * 1j,
            ],
            [
                r(1, 2) + r(2, 1) - r(3, 4) - r(4, 3),
                (r(1, 2) - r(2, 1) - r(3, 4) + r(4, 3)) * 1j,
                r(1, 1) - r(2, 2) - r(3, 3) + r(4, 4),
            ],
        ]
    )
    worst = float(np.max(np.abs(raw.imag)))
    if worst > IMAG_TOL:
        raise InconsistencyError(f"correlation tensor has imaginary part {worst:.3e}; input is not Hermitian")
    return CorrelationTensor(raw.real)


def correlation_value(T: CorrelationTensor, m: BlochVector, n: BlochVector) -> float:
    """``E(m, n) = m . T n``."""
    if not isinstance(m, BlochVector):
        m = BlochVector.from_array(m)
    if not isinstance(n, BlochVector):
        n = BlochVector.from_array(n)
    t = T.t if isinstance(T, CorrelationTensor) else np.asarray(T, dtype=float)
    return float(np.asarray(m) @ t @ np.asarray(n))


def max_correlation(T: CorrelationTensor) -> MaxCorrelation:
    """Largest singular value of ``T`` with the unit vectors that attain it."""
    t = T.t if isinstance(T, CorrelationTensor) else np.asarray(T, dtype=float)
    if not np.all(np.isfinite(t)):
        raise InvalidInputError("correlation tensor has non-finite entries")
    scale = float(np.max(np.abs(t)))
    if scale == 0.0:
        e3 = BlochVector(0.0, 0.0, 1.0)
        return MaxCorrelation(0.0, e3, e3)
    # work on T / max|T_ij| so that T^T T neither underflows nor overflows
    u = t / scale
    w, v = jacobi_eigh(u.T @ u)
    n = v[:, -1].real
    n = n / np.linalg.norm(n)
    un = u @ n
    norm = float(np.linalg.norm(un))
    m = un / norm
    value = norm * scale
    return MaxCorrelation(value, BlochVector.from_array(m), BlochVector.from_array(n))


def sphere_grid(n_steps: int) -> np.ndarray:
    """Unit vectors on a uniform ``(theta, phi)`` grid, ``n_steps**2`` rows."""
    theta = np.linspace(0.0, np.pi, n_steps)
    phi = 2.0 * np.pi * np.arange(n_steps) / n_steps
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    return np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1).reshape(-1, 3)


def grid_max_oracle(T: CorrelationTensor, n_steps: int, chunk: int = 64) -> float:
    """Brute-force maximum of ``E`` over all pairs of grid directions.

    Every grid point is a genuine unit vector, so the result never exceeds
    the true maximum (up to rounding).
    """
    if n_steps < 8:
        raise InvalidInputError("n_steps must be at least 8")
    t = T.t if isinstance(T, CorrelationTensor) else np.asarray(T, dtype=float)
    grid = sphere_grid(n_steps)
    right = t @ grid.T  # column k is T n_k
    best = -np.inf
    for start in range(0, len(grid), chunk):
        best = max(best, float(np.max(grid[start : start + chunk] @ right)))
    return best


def xstate_zero_pattern(T: CorrelationTensor, tol: float = DEFAULT_TOL) -> bool:
    t = T.t if isinstance(T, CorrelationTensor) else np.asarray(T, dtype=float)
    return all(abs(t[i, j]) <= tol for i, j in ((0, 2), (1, 2), (2, 0), (2, 1)))
