"""Antiderivatives: expansion vs quadrature oracles, norms three ways, binomial sums."""

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import erf

from hermspec import HermiteBasis, eval_h, half_line_integral_even
from hermspec.antideriv import (
    even_series,
    merge_identity_check,
    merge_identity_exact,
    norm_sq_even_closed,
    norm_sq_even_quadrature,
    norm_sq_even_recursive,
    norm_sq_odd_closed,
    norm_sq_odd_expansion,
    norm_sq_odd_quadrature,
    norm_sq_odd_recursive,
    norm_table,
    odd_series,
    partial_binomial_sum,
    partial_binomial_sum_exact,
    x_even,
    x_even_at_zero_normalized,
    x_even_at_zero_sq,
    x_odd,
)

SQRT2 = math.sqrt(2.0)
BASIS = HermiteBasis.build(121)


def cumulative_oracle(degree, x, lo=-12.0):
    val, _ = quad(
        lambda t: float(eval_h(BASIS, degree, np.array([t]))[0]), lo, x, limit=400
    )
    return val


def test_odd_series_structure():
    s = odd_series(2)
    assert s.parity == "odd"
    assert s.half_degree == 2
    assert [d for d, _ in s.expansion] == [4, 2, 0]
    assert not s.quadrature_fallback
    e = even_series(3)
    assert e.parity == "even"
    assert e.expansion == ()
    assert e.quadrature_fallback


def test_odd_value_at_origin():
    got = float(x_odd(BASIS, 0, np.array([0.0]))[0])
    assert got == pytest.approx(-SQRT2 * math.pi ** -0.25, abs=1e-14)
    assert got == pytest.approx(-1.06225, abs=1e-5)


def test_odd_vanishes_at_both_ends_small_k():
    for k in range(0, 3):
        vals = x_odd(BASIS, k, np.array([-8.0, 8.0]))
        assert np.max(np.abs(vals)) <= 1e-10, k


def test_odd_vanishes_at_degree_aware_radius():
    # beyond the turning point the Gaussian envelope wins; the fixed x = 8
    # window only suffices through k = 2
    for k in (5, 10, 20, 40):
        edge = max(8.0, math.sqrt(2.0 * (2 * k + 1) + 1.0) + 5.0)
        vals = x_odd(BASIS, k, np.array([-edge, edge]))
        assert np.max(np.abs(vals)) <= 1e-10, k


def test_odd_expansion_against_cumulative_quadrature():
    assert float(x_odd(BASIS, 3, np.array([0.4]))[0]) == pytest.approx(
        cumulative_oracle(7, 0.4, lo=-9.0), abs=1e-9
    )
    for k in (0, 1, 2, 5, 8):
        for x in (-2.3, -0.7, 0.0, 0.4, 1.9, 3.8):
            got = float(x_odd(BASIS, k, np.array([x]))[0])
            assert got == pytest.approx(cumulative_oracle(2 * k + 1, x), abs=1e-10), (k, x)


def test_odd_derivative_recovers_integrand():
    dt = 1e-3
    stencil = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / (12.0 * dt)
    offsets = np.array([-2.0, -1.0, 0.0, 1.0, 2.0]) * dt
    x = np.linspace(-4.0, 4.0, 50)
    for k in (0, 2, 7):
        dX = sum(c * x_odd(BASIS, k, x + o) for c, o in zip(stencil, offsets))
        ref = eval_h(BASIS, 2 * k + 1, x)
        assert np.max(np.abs(dX - ref)) < 1e-6, k


def test_even_derivative_recovers_signed_integrand():
    dt = 1e-3
    stencil = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / (12.0 * dt)
    offsets = np.array([-2.0, -1.0, 0.0, 1.0, 2.0]) * dt
    x = np.concatenate([np.linspace(-4.0, -0.5, 25), np.linspace(0.5, 4.0, 25)])
    for k in (0, 2, 5):
        dX = sum(c * x_even(BASIS, k, x + o) for c, o in zip(stencil, offsets))
        ref = np.sign(x) * eval_h(BASIS, 2 * k, x)
        assert np.max(np.abs(dX - ref)) < 1e-6, k


def test_even_value_at_origin():
    got = float(x_even(BASIS, 0, np.array([0.0]))[0])
    assert got == pytest.approx(-(math.pi ** 0.25) / SQRT2, abs=1e-13)
    assert got == pytest.approx(-half_line_integral_even(0), abs=1e-13)


def test_even_symmetry():
    assert float(x_even(BASIS, 2, np.array([-1.1]))[0]) == pytest.approx(
        float(x_even(BASIS, 2, np.array([1.1]))[0]), abs=1e-14
    )


def test_even_vanishes_at_infinity():
    # the k = 0 signed integral over the whole line cancels exactly
    assert abs(float(x_even(BASIS, 0, np.array([30.0]))[0])) < 1e-14
    for k in (1, 4, 10):
        edge = math.sqrt(2.0 * (2 * k + 1.0)) + 10.0
        assert abs(float(x_even(BASIS, k, np.array([edge]))[0])) < 1e-12, k


def test_even_against_erf_closed_form():
    # independent oracle for the cumulative machinery at k = 0
    x = np.linspace(-6.0, 6.0, 49)
    got = x_even(BASIS, 0, x)
    ref = (math.pi ** 0.25 / SQRT2) * (erf(np.abs(x) / SQRT2) - 1.0)
    assert np.max(np.abs(got - ref)) < 1e-12


def test_even_against_direct_quadrature():
    for x in (0.3, 1.7, 2.9):
        got = float(x_even(BASIS, 3, np.array([x]))[0])
        ref, _ = quad(
            lambda t: math.copysign(1.0, t) * float(eval_h(BASIS, 6, np.array([t]))[0]),
            -15.0,
            x,
            limit=400,
            points=[0.0],
        )
        assert got == pytest.approx(ref, abs=1e-9), x


def test_norm_sq_odd_closed_and_recursive():
    assert norm_sq_odd_closed(0) == 2.0
    assert norm_sq_odd_closed(5) == 2.0
    assert norm_sq_odd_closed(40) == 2.0
    assert norm_sq_odd_recursive(0) == 2.0
    assert norm_sq_odd_recursive(1) == pytest.approx(2.0, abs=1e-15)
    assert norm_sq_odd_recursive(25) == pytest.approx(2.0, abs=1e-14)


def test_norm_sq_odd_quadrature_and_expansion():
    for k in (0, 3, 40):
        assert norm_sq_odd_quadrature(BASIS, k) == pytest.approx(2.0, abs=1e-8), k
        assert norm_sq_odd_expansion(k) == pytest.approx(2.0, abs=1e-13), k


def test_partial_binomial_sum_values():
    assert partial_binomial_sum(0, 0.5) == 1.0
    assert partial_binomial_sum(2, 0.5) == pytest.approx(11.0 / 8.0, abs=1e-15)
    tail = partial_binomial_sum(2000, 0.5)
    assert tail == pytest.approx(SQRT2, abs=1e-3)
    gaps = [abs(partial_binomial_sum(k, 0.5) - SQRT2) for k in (10, 50, 200, 1000, 2000)]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    with pytest.raises(ValueError):
        partial_binomial_sum(3, 0.25)


def test_norm_sq_even_closed_values():
    assert norm_sq_even_closed(0) == pytest.approx(2.0 * (SQRT2 - 1.0), abs=1e-15)
    assert norm_sq_even_closed(1) == pytest.approx(3.0 * SQRT2 - 2.0, abs=1e-15)
    assert norm_sq_even_closed(200) == pytest.approx(2.0, abs=5e-3)
    assert all(norm_sq_even_closed(k) <= 3.0 for k in range(0, 201))


def test_norm_sq_even_recursive_matches_closed():
    assert norm_sq_even_recursive(0) == pytest.approx(2.0 * (SQRT2 - 1.0), abs=1e-15)
    assert norm_sq_even_recursive(1) == pytest.approx(norm_sq_even_closed(1), abs=1e-13)
    assert norm_sq_even_recursive(50) == pytest.approx(norm_sq_even_closed(50), abs=1e-12)


def test_norm_sq_even_quadrature_matches_closed():
    for k in (0, 1, 7, 40):
        assert norm_sq_even_quadrature(BASIS, k) == pytest.approx(
            norm_sq_even_closed(k), abs=1e-8
        ), k


def test_uniform_norm_bound_up_to_sixty():
    vals = [norm_sq_odd_quadrature(BASIS, k) for k in range(0, 61)]
    vals += [norm_sq_even_quadrature(BASIS, k) for k in range(0, 61)]
    assert max(vals) <= 3.01


def test_even_norm_oscillates_toward_two():
    # the maximum sits at k = 1; after it the sequence alternates around 2
    # with strictly shrinking envelope, monotone along each parity class
    vals = [norm_sq_even_closed(k) for k in range(0, 101)]
    assert max(vals) == vals[1]
    assert vals[1] == pytest.approx(3.0 * SQRT2 - 2.0, abs=1e-14)
    env = [abs(v - 2.0) for v in vals[1:]]
    assert all(a > b for a, b in zip(env, env[1:]))
    odd_side = vals[1::2]
    even_side = vals[2::2]
    assert all(a > b > 2.0 for a, b in zip(odd_side, odd_side[1:]))
    assert all(a < b < 2.0 for a, b in zip(even_side, even_side[1:]))


def test_junk_orthogonality():
    # the antiderivative of an odd eigenfunction spans only lower even modes,
    # so it is orthogonal to the next even eigenfunction up
    from scipy.special import roots_legendre

    x_ref, w_ref = roots_legendre(16)
    T = 20.0
    edges = np.linspace(-T, T, 161)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x_ref[None, :]).ravel()
    weights = (half[:, None] * w_ref[None, :]).ravel()
    for k in range(1, 21):
        integrand = eval_h(BASIS, 2 * k, nodes) * x_odd(BASIS, k - 1, nodes)
        assert abs(float(np.dot(weights, integrand))) < 1e-9, k


def test_x_even_at_zero_values():
    assert x_even_at_zero_sq(0) == pytest.approx(math.sqrt(math.pi) / 2.0, abs=1e-14)
    assert x_even_at_zero_sq(1) == pytest.approx(math.sqrt(math.pi) / 4.0, abs=1e-14)
    assert x_even_at_zero_normalized(30) <= 2.0
    assert all(x_even_at_zero_normalized(k) <= 2.0 for k in range(1, 101))
    with pytest.raises(ValueError):
        x_even_at_zero_normalized(0)


def test_merge_identity():
    assert merge_identity_check(0) < 1e-15
    assert max(merge_identity_check(k) for k in range(0, 101)) <= 1e-13
    for k in range(0, 21):
        assert merge_identity_exact(k) == Fraction(0), k


def test_partial_binomial_sum_exact_matches_float():
    half = Fraction(1, 2)
    for k in (0, 3, 10):
        assert partial_binomial_sum(k, 0.5) == pytest.approx(
            float(partial_binomial_sum_exact(k, half)), rel=1e-14
        )


def test_norm_table_sources():
    closed = norm_table(10, "closed_form")
    rec = norm_table(10, "recursion")
    quadr = norm_table(10, "quadrature", basis=BASIS)
    assert closed.source == "closed_form"
    assert all(v == 2.0 for v in closed.I_odd)
    for a, b in zip(closed.V_even, rec.V_even):
        assert a == pytest.approx(b, abs=1e-12)
    for a, b in zip(closed.V_even, quadr.V_even):
        assert a == pytest.approx(b, abs=1e-8)
    for v in quadr.I_odd:
        assert v == pytest.approx(2.0, abs=1e-8)
    assert all(0.0 < 2.0 * v <= 3.0 for v in closed.V_even)
    with pytest.raises(ValueError):
        norm_table(5, "magic")
