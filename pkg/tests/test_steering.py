import math

import numpy as np
import pytest

from conftest import random_density
from qudit_steering import (
    BracketError,
    Classification,
    CorrelationTensor,
    DensityMatrix,
    DomainError,
    Family,
    InvalidInputError,
    SteeringFunctional,
    XState,
    boundary_bisection,
    correlation_tensor,
    gisin,
    gisin_x_max,
    max_correlation,
    steering_check,
    steering_rhs,
    sweep_gisin,
    sweep_werner,
    werner,
    xstate_to_density,
)
from qudit_steering.steering import bisect, classify, family_margin, gisin_grid

SQ = SteeringFunctional.SUM_SQUARED
LIT = SteeringFunctional.SUM_LITERAL
GISIN_SLOPE = 4 * math.sqrt(6) / 25


def werner_closed(p):
    return abs(p), 2 * p * p


def gisin_closed(x):
    lhs = max(abs(1 - 2 * x), GISIN_SLOPE * x)
    rhs = 2 / 3 * (2 * (GISIN_SLOPE * x) ** 2 + (1 - 2 * x) ** 2)
    return lhs, rhs


def test_rhs_werner():
    for p in (-0.2, 0.1, 0.45, 0.9):
        T = CorrelationTensor(np.diag([p, -p, p]))
        assert steering_rhs(T, SQ) == pytest.approx(2 * p * p, abs=1e-15)
        assert steering_rhs(T, LIT) == pytest.approx(2 / 3 * p, abs=1e-15)


def test_rhs_zero_tensor():
    T = CorrelationTensor(np.zeros((3, 3)))
    assert steering_rhs(T, SQ) == 0 and steering_rhs(T, LIT) == 0


def test_rhs_gisin_half():
    T = correlation_tensor(xstate_to_density(gisin(0.5, 0.2)))
    # (2/3) * 2 * (0.5 * 4 sqrt6 / 25)^2 = (4/3) * 0.0384
    assert steering_rhs(T, SQ) == pytest.approx(0.0512, abs=1e-15)


def test_check_werner_in_fulfilled_band():
    r = steering_check(xstate_to_density(werner(0.45)))
    assert r.lhs == pytest.approx(0.45, abs=1e-15)
    assert r.rhs == pytest.approx(0.405, abs=1e-15)
    assert r.fulfilled and r.entangled
    assert r.classification is Classification.ENTANGLED_FULFILLED


def test_check_werner_violating():
    r = steering_check(xstate_to_density(werner(0.6)))
    assert r.lhs == pytest.approx(0.6) and r.rhs == pytest.approx(0.72)
    assert not r.fulfilled and r.entangled
    assert r.classification is Classification.ENTANGLED_VIOLATING


def test_check_maximally_mixed():
    r = steering_check(DensityMatrix(np.eye(4) / 4))
    assert (r.lhs, r.rhs, r.fulfilled, r.entangled) == (0.0, 0.0, True, False)
    assert r.classification is Classification.SEPARABLE


def test_check_accepts_xstate_directly():
    assert steering_check(werner(0.45)) == steering_check(xstate_to_density(werner(0.45)))


def test_check_literal_functional():
    r = steering_check(werner(0.45), LIT)
    assert r.rhs == pytest.approx(0.3)
    assert r.functional is LIT


def test_check_rejects_invalid_state():
    m = np.eye(4) / 4
    m[0, 0] = 0.5
    with pytest.raises(InvalidInputError):
        steering_check(DensityMatrix(m))


def test_check_dense_state_uses_partial_transpose():
    bell = np.zeros((4, 4), dtype=complex)
    bell[np.ix_([0, 3], [0, 3])] = 0.5
    u = np.kron(np.eye(2), np.array([[1, 1], [1, -1]]) / math.sqrt(2))
    dense = DensityMatrix(u @ bell @ u.conj().T)
    r = steering_check(dense)
    assert r.entangled
    # a local unitary leaves the singular values of T unchanged
    assert r.lhs == pytest.approx(1.0, abs=1e-14)
    assert not steering_check(DensityMatrix(np.diag([0.1, 0.2, 0.3, 0.4]))).entangled


def test_check_is_deterministic(rng):
    rho = random_density(rng)
    assert steering_check(rho) == steering_check(rho)


def test_classify_table():
    assert classify(True, False) is Classification.SEPARABLE
    assert classify(False, False) is Classification.SEPARABLE
    assert classify(True, True) is Classification.ENTANGLED_FULFILLED
    assert classify(False, True) is Classification.ENTANGLED_VIOLATING
    assert classify(True, True, psd=False) is Classification.NOT_APPLICABLE


# -- sweeps ---------------------------------------------------------------------


def test_werner_sweep_fulfilled_band():
    records = sweep_werner(-1 / 3, 1, 201)
    assert len(records) == 201
    for r in records:
        if abs(abs(r.param) - 0.5) < 1e-9:
            # equality point counts as fulfilled
            assert r.fulfilled
            continue
        assert r.fulfilled == (abs(r.param) < 0.5)


def test_werner_sweep_two_points():
    records = sweep_werner(-1 / 3, 1, 2)
    assert [r.param for r in records] == [-1 / 3, 1.0]


def test_werner_sweep_matches_closed_forms():
    records = sweep_werner(-1 / 3, 1, 201)
    params = [r.param for r in records]
    assert all(b > a for a, b in zip(params, params[1:]))
    for r in records:
        lhs, rhs = werner_closed(r.param)
        assert abs(r.lhs - lhs) <= 1e-12 and abs(r.rhs - rhs) <= 1e-12
        assert r.psd


def test_werner_sweep_recomputed_from_scratch():
    for r in sweep_werner(-1 / 3, 1, 41):
        rep = steering_check(xstate_to_density(werner(r.param)))
        assert (rep.lhs, rep.rhs, rep.fulfilled, rep.entangled) == (r.lhs, r.rhs, r.fulfilled, r.entangled)


def test_werner_sweep_bands():
    records = sweep_werner(-1 / 3, 1, 601)
    labels = [r.classification for r in records]
    # contiguous bands in order
    seen = []
    for c in labels:
        if not seen or seen[-1] is not c:
            seen.append(c)
    assert seen == [Classification.SEPARABLE, Classification.ENTANGLED_FULFILLED, Classification.ENTANGLED_VIOLATING]
    step = records[1].param - records[0].param
    first_ef = next(r.param for r in records if r.classification is Classification.ENTANGLED_FULFILLED)
    first_ev = next(r.param for r in records if r.classification is Classification.ENTANGLED_VIOLATING)
    assert 1 / 3 < first_ef <= 1 / 3 + step + 1e-12
    assert 0.5 < first_ev <= 0.5 + step + 1e-12


def test_werner_sweep_domain():
    with pytest.raises(DomainError):
        sweep_werner(-0.5, 1, 10)
    with pytest.raises(DomainError):
        sweep_werner(0.5, 0.2, 10)
    with pytest.raises(InvalidInputError):
        sweep_werner(0, 1, 1)


def test_gisin_sweep_all_fulfilled():
    records = sweep_gisin(0.2, 201)
    xm = gisin_x_max(0.2)
    assert len(records) == 201
    assert all(0 < r.param < xm for r in records)
    assert all(r.fulfilled and r.psd and not r.entangled for r in records)
    for r in records:
        lhs, rhs = gisin_closed(r.param)
        assert abs(r.lhs - lhs) <= 1e-12 and abs(r.rhs - rhs) <= 1e-12


def test_gisin_sweep_piecewise_lhs():
    lo, hi = 1 / (2 + GISIN_SLOPE), 1 / (2 - GISIN_SLOPE)
    for r in sweep_gisin(0.2, 201):
        if r.param < lo - 1e-9:
            assert r.lhs == pytest.approx(1 - 2 * r.param, abs=1e-14)
        elif lo + 1e-9 < r.param < hi - 1e-9:
            assert r.lhs == pytest.approx(GISIN_SLOPE * r.param, abs=1e-14)
        elif r.param > hi + 1e-9:
            assert r.lhs == pytest.approx(2 * r.param - 1, abs=1e-14)


def test_gisin_sweep_edge_near_x_max():
    records = sweep_gisin(0.2, 1000)
    assert records[-1].param < gisin_x_max(0.2)
    assert records[-1].psd
    beyond = sweep_gisin(0.2, 50, x_hi=0.99)
    assert any(r.entangled for r in beyond)
    assert all(r.entangled == (r.param > gisin_x_max(0.2)) for r in beyond)


def test_gisin_grid_is_open_interval():
    g = gisin_grid(0.0, 1.0, 3)
    np.testing.assert_allclose(g, [0.25, 0.5, 0.75])


def test_fulfilled_invariant_under_phase_rotation():
    for p in np.linspace(-1 / 3, 1, 67):
        base = werner(p)
        ref = steering_check(base)
        for theta in np.linspace(0, 2 * np.pi, 7):
            rotated = XState(base.d1, base.d2, base.d3, base.d4, base.anti * np.exp(1j * theta), base.inner)
            rep = steering_check(rotated)
            assert rep.fulfilled == ref.fulfilled
            assert rep.lhs == pytest.approx(ref.lhs, abs=1e-14)
            assert rep.rhs == pytest.approx(ref.rhs, abs=1e-14)


# -- boundary -------------------------------------------------------------------


def test_bisection_werner_positive():
    assert boundary_bisection(Family.WERNER, SQ, 0.4, 0.6, tol=1e-12) == pytest.approx(0.5, abs=1e-9)


def test_bisection_werner_negative_branch():
    # the algebraic continuation below p = -1/3 is used as is
    assert boundary_bisection(Family.WERNER, SQ, -0.6, -0.4, tol=1e-12) == pytest.approx(-0.5, abs=1e-9)


def test_bisection_gisin_has_no_boundary():
    with pytest.raises(BracketError):
        boundary_bisection(Family.GISIN, SQ, 1e-9, gisin_x_max(0.2), a=0.2)


def test_bisection_accepts_string_family():
    assert boundary_bisection("werner", SQ, 0.45, 0.55) == pytest.approx(0.5, abs=1e-9)


def test_margin_matches_closed_form():
    for x in (0.1, 0.5, 0.7):
        lhs, rhs = gisin_closed(x)
        assert family_margin(Family.GISIN, x, SQ) == pytest.approx(lhs - rhs, abs=1e-14)


def test_bisect_generic():
    assert bisect(lambda x: x * x - 2, 0, 2, 1e-13) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert bisect(lambda x: x, 0, 1) == 0
    with pytest.raises(BracketError):
        bisect(lambda x: x * x + 1, -1, 1)


def test_max_correlation_used_for_lhs(rng):
    for _ in range(50):
        rho = random_density(rng)
        r = steering_check(rho)
        assert r.lhs == max_correlation(correlation_tensor(rho)).value
