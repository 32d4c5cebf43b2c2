"""Correlations between coarse-grained outcomes of one system.

Two coins give a joint distribution ``w[i][j]`` over sides ``i, j in {1, 2}``.
For the spin-3/2 qudit the four projections are regrouped twice:

* grouping A: ``{3/2, 1/2}`` versus ``{-1/2, -3/2}``, probabilities
  ``pt1, pt2`` (upper half of the ladder versus lower half);
* grouping B: ``{3/2, -1/2}`` versus ``{1/2, -3/2}``, probabilities
  ``p1, p2`` (alternate levels).

Outcome values are +1 for the first group or coin side and -1 for the
second.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .state import DEFAULT_TOL, DensityMatrix, InvalidInputError

SIDE_VALUES = np.array([1.0, -1.0])


def _check_distribution(p: np.ndarray, tol: float) -> None:
    if not np.all(np.isfinite(p)):
        raise InvalidInputError("probabilities must be finite")
    if np.min(p) < -tol or abs(float(np.sum(p)) - 1.0) > tol:
        raise InvalidInputError(f"not a probability distribution: {p.tolist()}")


@dataclass(frozen=True)
class JointCoinDistribution:
    w: np.ndarray

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        if w.shape != (2, 2):
            raise InvalidInputError(f"joint coin distribution must be 2x2, got shape {w.shape}")
        _check_distribution(w, DEFAULT_TOL)
        w.setflags(write=False)
        object.__setattr__(self, "w", w)


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities of the projections 3/2, 1/2, -1/2, -3/2."""

    p32: float
    p12: float
    pm12: float
    pm32: float

    def __post_init__(self):
        _check_distribution(self.as_array(), DEFAULT_TOL)

    def as_array(self) -> np.ndarray:
        return np.array([self.p32, self.p12, self.pm12, self.pm32], dtype=float)

    @classmethod
    def from_density(cls, rho: DensityMatrix) -> OutcomeDistribution:
        """Diagonal of ``rho``; row 1 is projection 3/2 in the spin labelling."""
        return cls(*(float(x) for x in rho.diagonal()))


@dataclass(frozen=True)
class CoarsePair:
    p1: float
    p2: float
    pt1: float
    pt2: float


def coin_marginals(w: JointCoinDistribution) -> tuple[np.ndarray, np.ndarray]:
    """Marginals of the first and second coin."""
    return w.w.sum(axis=1), w.w.sum(axis=0)


def coin_correlation(w: JointCoinDistribution) -> float:
    """``<m1 m2>`` with side 1 -> +1 and side 2 -> -1."""
    return float(SIDE_VALUES @ w.w @ SIDE_VALUES)


def coin_correlation_raw(w: JointCoinDistribution) -> float:
    """``<m1 m2>`` with the side numbers 1 and 2 used as values."""
    sides = np.array([1.0, 2.0])
    return float(sides @ w.w @ sides)


def qudit_coarse(d: OutcomeDistribution) -> CoarsePair:
    return CoarsePair(
        p1=d.p32 + d.pm12,
        p2=d.pm32 + d.p12,
        pt1=d.p32 + d.p12,
        pt2=d.pm32 + d.pm12,
    )


def coarse_correlation(d: OutcomeDistribution) -> float:
    """Mean product of the two grouping signs; equals ``p32 - p12 - pm12 + pm32``."""
    sign_a = np.array([1.0, 1.0, -1.0, -1.0])
    sign_b = np.array([1.0, -1.0, 1.0, -1.0])
    return float(np.sum(sign_a * sign_b * d.as_array()))


def coarse_covariance(d: OutcomeDistribution) -> float:
    c = qudit_coarse(d)
    return coarse_correlation(d) - (c.pt1 - c.pt2) * (c.p1 - c.p2)
