"""X-shaped density matrices and the Werner and Gisin families."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .state import DEFAULT_TOL, DensityMatrix, IndexConvention, InvalidInputError

WERNER_P_MIN = -1.0 / 3.0
WERNER_P_MAX = 1.0


class DomainError(InvalidInputError):
    """Family parameter outside its allowed range."""


@dataclass(frozen=True)
class XState:
    """Diagonal ``d1..d4`` plus the anti-diagonal entry rho_14 and inner entry rho_23.

    The lower-left partners are the complex conjugates, so six numbers fix
    the whole Hermitian matrix.
    """

    d1: float
    d2: float
    d3: float
    d4: float
    anti: complex = 0j
    inner: complex = 0j

    def __post_init__(self):
        vals = (self.d1, self.d2, self.d3, self.d4, self.anti, self.inner)
        if not all(math.isfinite(abs(v)) for v in vals):
            raise InvalidInputError("X-state parameters must be finite")
        for name in ("d1", "d2", "d3", "d4"):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "anti", complex(self.anti))
        object.__setattr__(self, "inner", complex(self.inner))

    @property
    def diagonal(self) -> tuple[float, float, float, float]:
        return (self.d1, self.d2, self.d3, self.d4)

    def is_normalized(self, tol: float = DEFAULT_TOL) -> bool:
        return min(self.diagonal) >= -tol and abs(sum(self.diagonal) - 1.0) <= tol


def xstate_to_density(s: XState, convention=IndexConvention.SPIN_PROJECTION) -> DensityMatrix:
    m = np.diag(np.array(s.diagonal, dtype=complex))
    m[0, 3] = s.anti
    m[3, 0] = s.anti.conjugate()
    m[1, 2] = s.inner
    m[2, 1] = s.inner.conjugate()
    return DensityMatrix(m, convention)


def has_x_pattern(rho, tol: float = DEFAULT_TOL) -> bool:
    a = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho)
    mask = np.ones((4, 4), dtype=bool)
    for i, j in ((0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)):
        mask[i, j] = False
    return bool(np.all(np.abs(a[mask]) <= tol))


def density_to_xstate(rho: DensityMatrix, tol: float = DEFAULT_TOL) -> XState:
    if not has_x_pattern(rho, tol):
        raise InvalidInputError("matrix does not have the X sparsity pattern")
    a = rho.entries
    return XState(a[0, 0].real, a[1, 1].real, a[2, 2].real, a[3, 3].real, a[0, 3], a[1, 2])


def xstate_psd(s: XState, tol: float = DEFAULT_TOL) -> bool:
    """Positivity of an X-state via its two 2x2 blocks.

    Equivalent to a nonnegative spectrum once the diagonal is a probability
    vector.
    """
    if min(s.diagonal) < -tol:
        return False
    return s.d2 * s.d3 >= abs(s.inner) ** 2 - tol and s.d1 * s.d4 >= abs(s.anti) ** 2 - tol


def xstate_entangled(s: XState) -> bool:
    """Negative partial transpose of the two-qubit portrait.

    Partial transposition swaps the roles of rho_14 and rho_23, so the test
    reduces to comparing each off-diagonal modulus with the geometric mean
    of the other block's diagonal.
    """
    return abs(s.anti) > math.sqrt(max(s.d2 * s.d3, 0.0)) or abs(s.inner) > math.sqrt(max(s.d1 * s.d4, 0.0))


# -- Werner ---------------------------------------------------------------------


def werner_xstate(p: float) -> XState:
    """Werner matrix entries with no range check (algebraic continuation)."""
    p = float(p)
    return XState((1 + p) / 4, (1 - p) / 4, (1 - p) / 4, (1 + p) / 4, p / 2, 0j)


def werner(p: float) -> XState:
    """Werner state, ``-1/3 <= p <= 1``; entangled for ``p > 1/3``."""
    if not math.isfinite(p) or not WERNER_P_MIN <= p <= WERNER_P_MAX:
        raise DomainError(f"Werner parameter must lie in [-1/3, 1], got {p}")
    return werner_xstate(p)


# -- Gisin ----------------------------------------------------------------------


def default_b(a: complex) -> complex:
    """Partner amplitude ``+sqrt(1 - |a|^2)`` used when only ``a`` is given."""
    rest = 1.0 - abs(a) ** 2
    if rest < -DEFAULT_TOL:
        raise DomainError(f"|a| must not exceed 1, got |a|={abs(a)}")
    return complex(math.sqrt(max(rest, 0.0)))


def _check_amplitudes(a: complex, b: complex, tol: float) -> None:
    norm = abs(a) ** 2 + abs(b) ** 2
    if not math.isfinite(norm) or abs(norm - 1.0) > tol:
        raise DomainError(f"|a|^2 + |b|^2 must equal 1, got {norm}")


def gisin_xstate(x: float, a: complex, b: complex | None = None) -> XState:
    """Gisin matrix entries with no range check on ``x``."""
    a = complex(a)
    b = default_b(a) if b is None else complex(b)
    _check_amplitudes(a, b, 1e-9)
    x = float(x)
    return XState((1 - x) / 2, x * abs(a) ** 2, x * abs(b) ** 2, (1 - x) / 2, 0j, x * a * b.conjugate())


def gisin(x: float, a: complex, b: complex | None = None) -> XState:
    """Gisin state for ``0 < x < 1`` with amplitudes ``|a|^2 + |b|^2 = 1``."""
    if not math.isfinite(x) or not 0.0 < x < 1.0:
        raise DomainError(f"Gisin parameter x must lie in (0, 1), got {x}")
    return gisin_xstate(x, a, b)


def gisin_x_max(a: complex, b: complex | None = None) -> float:
    """Largest ``x`` for which the Gisin state has a positive partial transpose.

    ``1 / (1 + 2|ab|)``; for ``a = 0.2`` this is 0.71843.
    """
    a = complex(a)
    b = default_b(a) if b is None else complex(b)
    _check_amplitudes(a, b, 1e-9)
    return 1.0 / (1.0 + 2.0 * abs(a * b))
