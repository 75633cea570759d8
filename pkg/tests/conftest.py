import numpy as np
import pytest

import spinsurf as ss


def make_flat_torus(n=128):
    """The analytic end-to-end fixture: beta = 2x on [0, 2pi)^2 with the
    plane-wave left spinor (e^{iy}, e^{-iy}) and canonical right spinor
    (cos x, sin x); every defect has a closed-form value."""
    grid = ss.Grid.torus(n)
    beta = ss.ComplexField.from_function(grid, lambda x, y: 2 * x)
    p = ss.potential_from_beta(beta)
    s = ss.constant_p_left_family(0.5, 0.0, 1.0, 1.0, grid)
    t = ss.canonical_right_spinor(beta)
    return grid, beta, p, s, t


def make_flat_plane(n=64, periodic=False):
    """p = 0, s = (1, 0), t = (1, 0): the immersion is the flat plane."""
    grid = ss.Grid.torus(n) if periodic else ss.Grid.rectangle(n)
    one = ss.ComplexField.constant(grid, 1.0)
    zero = ss.ComplexField.constant(grid, 0.0)
    p = ss.constant_potential(grid, 0.0)
    return grid, p, ss.LeftSpinor(one, zero), ss.RightSpinor(one, zero)


def random_smooth_field(grid, rng, modes=3):
    """Band-limited random field: a handful of low Fourier modes."""
    x, y = grid.mesh()
    out = np.zeros(grid.shape, dtype=np.complex128)
    for _ in range(modes):
        kx, ky = rng.integers(-3, 4, size=2)
        amp = rng.normal() + 1j * rng.normal()
        out += amp * np.exp(1j * (kx * x + ky * y))
    return ss.ComplexField(grid, out)


@pytest.fixture
def flat_torus():
    return make_flat_torus()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
