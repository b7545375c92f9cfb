"""Quadrature rules: textbook values, singular weights, and admissibility guards."""

import math

import numpy as np
import pytest

from hermspec import (
    HermiteBasis,
    circle_directions,
    eval_h,
    gauss_hermite,
    gauss_legendre,
    gauss_legendre_panels,
    integrate_cyl_2d,
    integrate_radial_3d,
    radial_rule_absorbing,
    radial_rule_panels,
    sphere_directions,
    truncation_radius,
)


def test_gauss_legendre_one_node():
    rule = gauss_legendre(1)
    assert rule.nodes == pytest.approx([0.0], abs=1e-15)
    assert rule.weights == pytest.approx([2.0], abs=1e-15)


def test_gauss_hermite_small_rules():
    rule = gauss_hermite(1)
    assert rule.nodes == pytest.approx([0.0], abs=1e-15)
    assert rule.weights == pytest.approx([math.sqrt(math.pi)], abs=1e-14)
    rule2 = gauss_hermite(2)
    assert sorted(rule2.nodes) == pytest.approx(
        [-1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)], abs=1e-14
    )
    assert rule2.weights == pytest.approx([math.sqrt(math.pi) / 2.0] * 2, abs=1e-14)


def test_gauss_legendre_polynomial_exactness():
    rule = gauss_legendre(6)
    vals = rule.nodes ** 10
    assert rule.integrate(vals) == pytest.approx(2.0 / 11.0, rel=1e-14)


def test_panels_integrate_smooth_function():
    rule = gauss_legendre_panels(0.0, 2.0, 8, 10)
    assert rule.integrate(np.exp(rule.nodes)) == pytest.approx(math.e ** 2 - 1.0, rel=1e-13)


def test_panel_rule_shape_and_domain():
    rule = gauss_legendre_panels(-1.0, 3.0, 5, 4)
    assert rule.nodes.shape == (20,)
    assert rule.domain == ("interval", -1.0, 3.0, 5)
    assert np.all(np.diff(rule.nodes) > 0)


def test_radial_3d_gaussian_plain():
    val = integrate_radial_3d(lambda x, y, z: np.exp(-(x * x + y * y + z * z)), 0.0, 12.0)
    assert val == pytest.approx(math.pi ** 1.5, abs=1e-10)


def test_radial_3d_gaussian_full_inverse_square():
    val = integrate_radial_3d(lambda x, y, z: np.exp(-(x * x + y * y + z * z)), 1.0, 12.0)
    assert val == pytest.approx(2.0 * math.pi ** 1.5, abs=1e-10)


def test_radial_3d_ground_state_inverse_square():
    # |h_0(x1) h_0(x2) h_0(x3)|^2 / r^2 integrates to exactly 2
    basis = HermiteBasis.build(0)

    def F(x, y, z):
        return (eval_h(basis, 0, x) * eval_h(basis, 0, y) * eval_h(basis, 0, z)) ** 2

    assert integrate_radial_3d(F, 1.0, 12.0) == pytest.approx(2.0, abs=1e-10)


def test_cyl_2d_gaussian_plain():
    val = integrate_cyl_2d(lambda x, y: np.exp(-(x * x + y * y)), 0.0, 12.0)
    assert val == pytest.approx(math.pi, abs=1e-12)


def test_cyl_2d_gaussian_half_weight():
    val = integrate_cyl_2d(lambda x, y: np.exp(-(x * x + y * y)), 0.5, 12.0)
    assert val == pytest.approx(math.pi ** 1.5, abs=1e-10)


def test_cyl_2d_disk_indicator_strong_weight():
    val = integrate_cyl_2d(lambda x, y: (x * x + y * y <= 1.0).astype(float), 0.9, 1.0)
    assert val == pytest.approx(10.0 * math.pi, abs=1e-8)


def test_rotation_invariance_of_3d_integrator():
    v1 = np.array([1.0, 0.0, 0.0])
    v2 = np.array([1.0, 2.0, -2.0]) / 3.0

    def make(v):
        return lambda x, y, z: np.exp(-(x * x + y * y + z * z)) * (
            1.0 + (v[0] * x + v[1] * y + v[2] * z) ** 2
        )

    a = integrate_radial_3d(make(v1), 0.5, 12.0)
    b = integrate_radial_3d(make(v2), 0.5, 12.0)
    assert abs(a - b) < 1e-12


def test_admissibility_guards():
    with pytest.raises(ValueError):
        integrate_cyl_2d(lambda x, y: np.exp(-(x * x + y * y)), 1.0, 12.0)
    with pytest.raises(ValueError):
        integrate_radial_3d(lambda x, y, z: np.exp(-(x * x + y * y + z * z)), 1.2, 12.0)
    with pytest.raises(ValueError):
        radial_rule_panels(2, 1.0, 12.0, 64, 8)
    with pytest.raises(ValueError):
        radial_rule_absorbing(2, 1.0, 16)


def test_divergent_rule_requires_explicit_flag():
    rule = radial_rule_panels(2, 1.0, 12.0, 64, 8, allow_divergent=True)
    assert np.all(np.isfinite(rule.weights))
    assert np.all(rule.nodes > 0)


def test_absorbing_rule_polynomial_exactness():
    # integral_0^inf r^4 e^(-r^2) r^(2-2) dr = 3 sqrt(pi) / 8 with a 4-node rule
    rule = radial_rule_absorbing(3, 1.0, 4)
    got = rule.integrate(rule.nodes ** 4 * np.exp(-rule.nodes ** 2))
    assert got == pytest.approx(3.0 * math.sqrt(math.pi) / 8.0, rel=1e-14)


def test_absorbing_matches_panels_on_eigenfunction_integrand():
    basis = HermiteBasis.build(9)

    def G(r):
        return eval_h(basis, 9, r) ** 2

    absorbing = radial_rule_absorbing(3, 1.0, 12)
    panels = radial_rule_panels(3, 1.0, 16.0, 200, 12)
    a = absorbing.integrate(G(absorbing.nodes))
    b = panels.integrate(G(panels.nodes))
    assert a == pytest.approx(b, rel=1e-11)


def test_absorbing_node_cap():
    with pytest.raises(ValueError):
        radial_rule_absorbing(3, 0.0, 200)


def test_circle_directions_weights_and_symmetry():
    dirs, w = circle_directions(16)
    assert w.sum() == pytest.approx(2.0 * math.pi, rel=1e-14)
    assert np.allclose(np.linalg.norm(dirs, axis=1), 1.0, atol=1e-14)
    # antipodal closure: midpoint nodes come in +/- pairs for even counts
    half = len(dirs) // 2
    assert np.allclose(dirs[:half], -dirs[half:], atol=1e-12)
    with pytest.raises(ValueError):
        circle_directions(7)


def test_sphere_directions_weights_and_symmetry():
    dirs, w = sphere_directions(12, 16)
    assert w.sum() == pytest.approx(4.0 * math.pi, rel=1e-13)
    assert np.allclose(np.linalg.norm(dirs, axis=1), 1.0, atol=1e-13)
    # every direction's antipode is present with matching weight
    table = {tuple(np.round(d, 9)): wi for d, wi in zip(dirs, w)}
    for d, wi in zip(dirs, w):
        key = tuple(np.round(-d, 9))
        assert key in table
        assert table[key] == pytest.approx(wi, rel=1e-13)


def test_sphere_rule_integrates_low_degree_harmonics():
    dirs, w = sphere_directions(8, 12)
    assert np.dot(w, dirs[:, 0] ** 2) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-13)
    assert np.dot(w, dirs[:, 0] * dirs[:, 1]) == pytest.approx(0.0, abs=1e-13)


def test_truncation_radius_formula():
    assert truncation_radius(20, 3) == pytest.approx(math.sqrt(43.0) + 10.0, rel=1e-15)
