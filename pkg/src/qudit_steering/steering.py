"""Steering inequality, state classification, family sweeps and boundary search.

The inequality compares the maximal correlation ``max E(m, n)`` with a
right-hand side built from the tensor entries.  Two readings of that
right-hand side are offered:

* ``SUM_SQUARED``: ``(2/3) * sum T_ij**2`` (default).  With it the Werner
  family satisfies the inequality exactly for ``|p| <= 1/2`` and the Gisin
  family (a = 0.2) on its whole positive-partial-transpose range.
* ``SUM_LITERAL``: ``(2/3) * sum T_ij``, kept for comparison.

Classification labels are deliberately neutral.  ``ENTANGLED_FULFILLED`` is
the band (1/3 < p < 1/2 for Werner) conventionally labelled "steerable" in
the single-qudit steering literature, even though a fulfilled inequality is
also what a non-steerable state must satisfy.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .correlation import CorrelationTensor, correlation_tensor, max_correlation
from .state import DEFAULT_TOL, DensityMatrix, InvalidInputError, ppt_min_eigenvalue, require_valid
from .xstates import (
    WERNER_P_MAX,
    WERNER_P_MIN,
    DomainError,
    XState,
    density_to_xstate,
    gisin_x_max,
    gisin_xstate,
    has_x_pattern,
    werner_xstate,
    xstate_entangled,
    xstate_psd,
    xstate_to_density,
)

FULFILL_EPS = 1e-12
MAX_BISECTION_ITER = 200

STEERABLE_NOTE = (
    "note: EntangledFulfilled (Werner 1/3 < p < 1/2) is the band conventionally "
    "labelled 'steerable'; labels here stay neutral"
)


class SteeringFunctional(enum.Enum):
    SUM_SQUARED = "sum_squared"
    SUM_LITERAL = "sum_literal"


class Classification(enum.Enum):
    SEPARABLE = "Separable"
    ENTANGLED_FULFILLED = "EntangledFulfilled"
    ENTANGLED_VIOLATING = "EntangledViolating"
    NOT_APPLICABLE = "NotApplicable"


class Family(enum.Enum):
    WERNER = "werner"
    GISIN = "gisin"


class BracketError(ValueError):
    """The bracket passed to a bisection does not enclose a sign change."""


@dataclass(frozen=True)
class SteeringReport:
    lhs: float
    rhs: float
    fulfilled: bool
    entangled: bool
    classification: Classification
    functional: SteeringFunctional = SteeringFunctional.SUM_SQUARED

    def lines(self) -> list[str]:
        return [
            f"lhs={self.lhs:.12g}",
            f"rhs={self.rhs:.12g}",
            f"fulfilled={str(self.fulfilled).lower()}",
            f"entangled={str(self.entangled).lower()}",
            f"classification={self.classification.value}",
            f"functional={self.functional.value}",
        ]


@dataclass(frozen=True)
class SweepRecord:
    param: float
    lhs: float
    rhs: float
    fulfilled: bool
    entangled: bool
    psd: bool

    @property
    def classification(self) -> Classification:
        return classify(self.fulfilled, self.entangled, self.psd)


def classify(fulfilled: bool, entangled: bool, psd: bool = True) -> Classification:
    if not psd:
        return Classification.NOT_APPLICABLE
    if not entangled:
        return Classification.SEPARABLE
    return Classification.ENTANGLED_FULFILLED if fulfilled else Classification.ENTANGLED_VIOLATING


def steering_rhs(T: CorrelationTensor, f: SteeringFunctional = SteeringFunctional.SUM_SQUARED) -> float:
    t = T.t if isinstance(T, CorrelationTensor) else np.asarray(T, dtype=float)
    if f is SteeringFunctional.SUM_SQUARED:
        return 2.0 / 3.0 * float(np.sum(t * t))
    if f is SteeringFunctional.SUM_LITERAL:
        return 2.0 / 3.0 * float(np.sum(t))
    raise InvalidInputError(f"unknown functional {f!r}")


def is_fulfilled(lhs: float, rhs: float) -> bool:
    return lhs >= rhs - FULFILL_EPS


def _sides(rho, f: SteeringFunctional) -> tuple[float, float]:
    T = correlation_tensor(rho)
    return max_correlation(T).value, steering_rhs(T, f)


def is_entangled(rho, tol: float = DEFAULT_TOL) -> bool:
    """X-state block test when the sparsity allows it, else the dense partial transpose."""
    if has_x_pattern(rho, tol):
        return xstate_entangled(density_to_xstate(rho, tol))
    return ppt_min_eigenvalue(rho) < -tol


def steering_check(
    rho: DensityMatrix,
    f: SteeringFunctional = SteeringFunctional.SUM_SQUARED,
    tol: float = DEFAULT_TOL,
) -> SteeringReport:
    """Evaluate both sides of the inequality for a valid density matrix."""
    if isinstance(rho, XState):
        rho = xstate_to_density(rho)
    require_valid(rho, tol)
    lhs, rhs = _sides(rho, f)
    fulfilled = is_fulfilled(lhs, rhs)
    entangled = is_entangled(rho, tol)
    return SteeringReport(lhs, rhs, fulfilled, entangled, classify(fulfilled, entangled), f)


def _record(param: float, s: XState, f: SteeringFunctional) -> SweepRecord:
    lhs, rhs = _sides(xstate_to_density(s), f)
    return SweepRecord(
        param=float(param),
        lhs=lhs,
        rhs=rhs,
        fulfilled=is_fulfilled(lhs, rhs),
        entangled=xstate_entangled(s),
        psd=xstate_psd(s),
    )


def sweep_werner(
    p_lo: float = WERNER_P_MIN,
    p_hi: float = WERNER_P_MAX,
    n: int = 201,
    f: SteeringFunctional = SteeringFunctional.SUM_SQUARED,
) -> list[SweepRecord]:
    """``n`` evenly spaced Werner states from ``p_lo`` to ``p_hi`` inclusive."""
    if n < 2:
        raise InvalidInputError("a sweep needs at least two points")
    if not WERNER_P_MIN <= p_lo < p_hi <= WERNER_P_MAX:
        raise DomainError(f"Werner sweep range must satisfy -1/3 <= p_lo < p_hi <= 1, got [{p_lo}, {p_hi}]")
    return [_record(p, werner_xstate(p), f) for p in np.linspace(p_lo, p_hi, n)]


def gisin_grid(x_lo: float, x_hi: float, n: int) -> np.ndarray:
    """``n`` interior points of the open interval ``(x_lo, x_hi)``."""
    k = np.arange(1, n + 1)
    return x_lo + (x_hi - x_lo) * k / (n + 1)


def sweep_gisin(
    a: complex = 0.2,
    n: int = 201,
    f: SteeringFunctional = SteeringFunctional.SUM_SQUARED,
    b: complex | None = None,
    x_hi: float | None = None,
) -> list[SweepRecord]:
    """Gisin states on ``(0, x_hi)``; ``x_hi`` defaults to ``gisin_x_max(a, b)``."""
    if n < 2:
        raise InvalidInputError("a sweep needs at least two points")
    if x_hi is None:
        x_hi = gisin_x_max(a, b)
    if not 0.0 < x_hi <= 1.0:
        raise DomainError(f"Gisin sweep upper bound must lie in (0, 1], got {x_hi}")
    return [_record(x, gisin_xstate(x, a, b), f) for x in gisin_grid(0.0, x_hi, n)]


def bisect(fn, lo: float, hi: float, tol: float = DEFAULT_TOL, max_iter: int = MAX_BISECTION_ITER) -> float:
    """Zero crossing of ``fn`` in ``[lo, hi]`` to within ``tol``."""
    flo, fhi = fn(lo), fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f(lo)={flo:.6g}, f(hi)={fhi:.6g}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid in (lo, hi):
            break
        fmid = fn(mid)
        if fmid == 0.0:
            return mid
        if math.copysign(1.0, fmid) == math.copysign(1.0, flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def family_margin(family: Family, param: float, f: SteeringFunctional, a: complex = 0.2, b=None) -> float:
    """``lhs - rhs`` for a family member; outside the physical range the matrix is used as is."""
    family = Family(family)
    s = werner_xstate(param) if family is Family.WERNER else gisin_xstate(param, a, b)
    lhs, rhs = _sides(xstate_to_density(s), f)
    return lhs - rhs


def boundary_bisection(
    family: Family,
    f: SteeringFunctional = SteeringFunctional.SUM_SQUARED,
    lo: float = 0.4,
    hi: float = 0.6,
    tol: float = DEFAULT_TOL,
    a: complex = 0.2,
    b: complex | None = None,
) -> float:
    """Parameter at which the inequality switches between fulfilled and violated."""
    return bisect(lambda x: family_margin(family, x, f, a, b), lo, hi, tol)
