"""Wirtinger derivatives, exterior derivative and form integration."""

import numpy as np
import pytest

import spinsurf as ss
from spinsurf.calculus import adaptive_diff, resolve_method, seam_compatible

from conftest import random_smooth_field


def test_derivative_of_constant_is_zero():
    grid = ss.Grid.rectangle(16)
    f = ss.ComplexField.constant(grid, 7 + 2j)
    assert ss.d_dz(f).max_abs() == 0.0
    assert ss.d_dzbar(f).max_abs() == 0.0


def test_d_dz_of_z_squared():
    grid = ss.Grid.rectangle(32)
    z = grid.zz()
    f = ss.ComplexField(grid, z * z)
    # stencils are exact on quadratics, boundary rows included
    assert np.max(np.abs(ss.d_dz(f).values - 2.0 * z)) <= 1e-12
    assert ss.d_dzbar(f).max_abs() <= 1e-12


def test_d_dz_of_exp_iy_spectral():
    grid = ss.Grid.torus(32)
    f = ss.ComplexField.from_function(grid, lambda x, y: np.exp(1j * y))
    assert np.max(np.abs(ss.d_dz(f).values - 0.5 * f.values)) <= 1e-13
    assert np.max(np.abs(ss.d_dzbar(f).values + 0.5 * f.values)) <= 1e-13


def test_d_dzbar_of_zbar_and_linear_beta():
    grid = ss.Grid.rectangle(16)
    zbar = ss.ComplexField(grid, np.conj(grid.zz()))
    assert np.max(np.abs(ss.d_dzbar(zbar).values - 1.0)) <= 1e-13
    beta = ss.ComplexField.from_function(grid, lambda x, y: 2 * x)
    assert np.max(np.abs(ss.d_dzbar(beta).values - 1.0)) <= 1e-13


def test_linearity(rng):
    grid = ss.Grid.torus(32)
    f = random_smooth_field(grid, rng)
    g = random_smooth_field(grid, rng)
    a, b = 1.3 - 0.4j, -0.7 + 2.1j
    lhs = ss.d_dz(a * f + b * g).values
    rhs = a * ss.d_dz(f).values + b * ss.d_dz(g).values
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * (1.0 + np.max(np.abs(rhs)))


def test_conjugation_identity(rng):
    # d/dzbar(conj f) = conj(d/dz f); exact for the real FD stencils
    grid = ss.Grid.rectangle(24)
    f = ss.ComplexField(grid, rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape))
    lhs = ss.d_dzbar(f.conj()).values
    rhs = np.conj(ss.d_dz(f).values)
    assert np.array_equal(lhs, rhs)
    tgrid = ss.Grid.torus(24)
    g = random_smooth_field(tgrid, rng)
    assert np.max(np.abs(ss.d_dzbar(g.conj()).values - np.conj(ss.d_dz(g).values))) <= 1e-13


def _leibniz_error(n):
    grid = ss.Grid.rectangle(n, length_x=1.0)
    f = ss.ComplexField.from_function(grid, lambda x, y: np.exp(x) * np.cos(y) + 1j * x * y)
    g = ss.ComplexField.from_function(grid, lambda x, y: np.sin(x + 2 * y) + 0j)
    defect = ss.d_dz(f * g).values - f.values * ss.d_dz(g).values - g.values * ss.d_dz(f).values
    return np.max(np.abs(defect))


def test_leibniz_is_second_order():
    e1, e2 = _leibniz_error(33), _leibniz_error(65)
    assert 3.2 <= e1 / e2 <= 4.8


def test_fd_halving_ratio(rng):
    # halving h cuts the truncation error of d_dz by ~4 for smooth data
    def err(n):
        grid = ss.Grid.rectangle(n, length_x=1.0)
        x, y = grid.mesh()
        f = ss.ComplexField(grid, np.exp(x + 1j * y))
        return np.max(np.abs(ss.d_dz(f).values - f.values))

    assert 3.5 <= err(33) / err(65) <= 4.5


def test_exterior_derivative_examples():
    grid = ss.Grid.rectangle(24)
    one = ss.ComplexField.constant(grid, 1.0)
    zero = ss.ComplexField.constant(grid, 0.0)
    assert ss.exterior_derivative(ss.OneForm(one, zero)).max_abs() <= 1e-14
    zbar_dz = ss.OneForm(ss.ComplexField(grid, np.conj(grid.zz())), zero)
    assert np.max(np.abs(ss.exterior_derivative(zbar_dz).values - 2j)) <= 1e-12


def test_exactness_implies_closedness(rng):
    # the discrete one-axis stencils commute, so d(dF) sits at roundoff
    grid = ss.Grid.rectangle(48, length_x=1.0)
    F = ss.ComplexField.from_function(grid, lambda x, y: np.exp(x) * np.sin(y) + 1j * np.cos(x * y))
    dF = ss.gradient_form(F)
    assert ss.exterior_derivative(dF).max_abs() <= 1e-10


def test_fundamental_theorem():
    grid = ss.Grid.rectangle(65, length_x=1.0)
    fn = lambda x, y: np.exp(x) * np.cos(y) + 1j * np.sin(x * y)
    F = ss.ComplexField.from_function(grid, fn)
    result = ss.integrate_form(ss.gradient_form(F))
    expect = F.values - F.values[0, 0]
    assert np.max(np.abs(result.field.values - expect)) <= 1e-3


def test_integrate_dz_on_unit_square():
    grid = ss.Grid.rectangle(16)
    omega = ss.OneForm(ss.ComplexField.constant(grid, 1.0), ss.ComplexField.constant(grid, 0.0))
    result = ss.integrate_form(omega)
    assert np.max(np.abs(result.field.values - grid.zz())) <= 1e-12
    assert result.path_discrepancy <= 1e-12
    assert result.periods == (0j, 0j)


def test_integrate_zero_form():
    grid = ss.Grid.rectangle(16)
    zero = ss.ComplexField.constant(grid, 0.0)
    result = ss.integrate_form(ss.OneForm(zero, zero))
    assert result.field.max_abs() == 0.0


def test_integrate_flat_torus_form():
    grid = ss.Grid.torus(128)
    x, y = grid.mesh()
    eiy = np.exp(1j * y)
    omega = ss.OneForm(ss.ComplexField(grid, eiy * np.cos(x)),
                       ss.ComplexField(grid, -eiy * np.sin(x)))
    result = ss.integrate_form(omega)
    expect = eiy * (np.sin(x) + np.cos(x)) - 1.0
    assert np.max(np.abs(result.field.values - expect)) <= 1e-10
    assert result.path_discrepancy <= 1e-10
    assert max(abs(p) for p in result.periods) <= 1e-10


def test_base_point_and_validation():
    grid = ss.Grid.torus(16)
    omega = ss.OneForm(ss.ComplexField.constant(grid, 1 + 1j), ss.ComplexField.constant(grid, 0.5))
    base = ss.BasePoint(3, 7)
    result = ss.integrate_form(omega, base)
    assert abs(result.field.values[3, 7]) == 0.0
    with pytest.raises(ss.ValidationError):
        ss.integrate_form(omega, ss.BasePoint(99, 0))


def test_resolve_method_rules():
    torus, rect = ss.Grid.torus(8), ss.Grid.rectangle(8)
    assert resolve_method(torus, "auto") == "spectral"
    assert resolve_method(rect, "auto") == "fd"
    with pytest.raises(ss.UnsupportedDomainError):
        resolve_method(rect, "spectral")
    with pytest.raises(ss.ValidationError):
        resolve_method(torus, "bogus")


def test_seam_compatibility_detection():
    grid = ss.Grid.torus(64)
    x, _ = grid.mesh()
    assert seam_compatible(np.sin(x), 0)
    assert not seam_compatible(x, 0)  # linear ramp breaks the wrap
    # adaptive_diff still differentiates the ramp correctly everywhere
    d = adaptive_diff(x, grid, 0, "spectral")
    assert np.max(np.abs(d - 1.0)) <= 1e-10


def test_grid_mismatch_raises():
    a = ss.ComplexField.constant(ss.Grid.rectangle(8), 1.0)
    b = ss.ComplexField.constant(ss.Grid.rectangle(9), 1.0)
    with pytest.raises(ss.GridMismatchError):
        a + b
