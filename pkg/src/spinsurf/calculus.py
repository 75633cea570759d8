"""Discrete complex calculus on rectangular grids.

Wirtinger derivatives (d/dz = (dx - i dy)/2, d/dzbar = (dx + i dy)/2 with
dz = dx + i dy), the exterior derivative of 1-forms, and path integration
of (approximately) closed forms.

Two differentiation backends: Fourier-spectral on doubly periodic grids
and second-order finite differences otherwise. ``method`` is one of
"auto", "fd", "spectral"; "auto" picks spectral exactly when both axes
are periodic.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ._backend import cumtrapz_2d, fd_diff_2d
from .errors import UnsupportedDomainError, ValidationError
from .fields import BasePoint, ComplexField, Grid, OneForm

__all__ = [
    "adaptive_diff",
    "seam_compatible",
    "d_dx",
    "d_dy",
    "d_dz",
    "d_dzbar",
    "exterior_derivative",
    "integrate_form",
    "IntegrationResult",
    "gradient_form",
]


def resolve_method(grid: Grid, method: str = "auto") -> str:
    if method == "auto":
        return "spectral" if grid.doubly_periodic else "fd"
    if method == "spectral" and not grid.doubly_periodic:
        raise UnsupportedDomainError("spectral differentiation needs a doubly periodic grid")
    if method not in ("fd", "spectral"):
        raise ValidationError(f"unknown method {method!r}")
    return method


def _wavenumbers(n: int, h: float) -> np.ndarray:
    return 2.0 * np.pi * np.fft.fftfreq(n, d=h)


def _spectral_diff(values: np.ndarray, h: float, axis: int) -> np.ndarray:
    k = _wavenumbers(values.shape[axis], h)
    shape = [1, 1]
    shape[axis] = -1
    vhat = np.fft.fft(values, axis=axis)
    return np.fft.ifft(1j * k.reshape(shape) * vhat, axis=axis)


def _diff(values: np.ndarray, grid: Grid, axis: int, method: str) -> np.ndarray:
    h = grid.hx if axis == 0 else grid.hy
    periodic = grid.periodic_x if axis == 0 else grid.periodic_y
    if method == "spectral":
        return _spectral_diff(values, h, axis)
    return fd_diff_2d(values, h, axis, periodic)


def seam_compatible(values: np.ndarray, axis: int) -> bool:
    """True when a sampled field genuinely wraps smoothly along ``axis``.

    Compares the second difference across the seam against the interior
    ones. Fields with secular growth (integrals of forms with nonzero
    mean, winding angle fields) fail the test and must not see wrapped
    or spectral stencils.
    """
    v = np.moveaxis(np.asarray(values), axis, 0)
    seam = np.max(np.abs(v[0] - 2.0 * v[-1] + v[-2]))
    interior = np.max(np.abs(v[2:] - 2.0 * v[1:-1] + v[:-2])) if v.shape[0] > 2 else 0.0
    scale = 1.0 + np.max(np.abs(v))
    return seam <= 10.0 * interior + 1e-9 * scale


def adaptive_diff(values: np.ndarray, grid: Grid, axis: int, method: str) -> np.ndarray:
    """Derivative along one axis that downgrades to one-sided stencils
    when the field does not respect the periodic closure."""
    h = grid.hx if axis == 0 else grid.hy
    periodic = grid.periodic_x if axis == 0 else grid.periodic_y
    periodic_eff = periodic and seam_compatible(values, axis)
    if method == "spectral" and periodic_eff:
        return _spectral_diff(values, h, axis)
    return fd_diff_2d(values, h, axis, periodic_eff)


def d_dx(f: ComplexField, method: str = "auto") -> ComplexField:
    method = resolve_method(f.grid, method)
    return ComplexField(f.grid, _diff(f.values, f.grid, 0, method))


def d_dy(f: ComplexField, method: str = "auto") -> ComplexField:
    method = resolve_method(f.grid, method)
    return ComplexField(f.grid, _diff(f.values, f.grid, 1, method))


def d_dz(f: ComplexField, method: str = "auto") -> ComplexField:
    """Discrete Wirtinger z-derivative (dx - i dy)/2."""
    method = resolve_method(f.grid, method)
    fx = _diff(f.values, f.grid, 0, method)
    fy = _diff(f.values, f.grid, 1, method)
    return ComplexField(f.grid, 0.5 * (fx - 1j * fy))


def d_dzbar(f: ComplexField, method: str = "auto") -> ComplexField:
    """Discrete Wirtinger zbar-derivative (dx + i dy)/2."""
    method = resolve_method(f.grid, method)
    fx = _diff(f.values, f.grid, 0, method)
    fy = _diff(f.values, f.grid, 1, method)
    return ComplexField(f.grid, 0.5 * (fx + 1j * fy))


def exterior_derivative(omega: OneForm, method: str = "auto") -> ComplexField:
    """dx^dy coefficient of d(A dz + B dzbar) = 2i (dA/dzbar - dB/dz).

    Uses the orientation dzbar^dz = 2i dx^dy; a zero result field means
    the form is discretely closed.
    """
    dA = d_dzbar(omega.A, method)
    dB = d_dz(omega.B, method)
    return ComplexField(omega.grid, 2j * (dA.values - dB.values))


def gradient_form(f: ComplexField, method: str = "auto") -> OneForm:
    """The exact 1-form df = (df/dz) dz + (df/dzbar) dzbar."""
    return OneForm(d_dz(f, method), d_dzbar(f, method))


class IntegrationResult(NamedTuple):
    field: ComplexField
    path_discrepancy: float
    periods: tuple[complex, complex]


def _antideriv_axis(values: np.ndarray, grid: Grid, axis: int, method: str) -> np.ndarray:
    """Antiderivative along one axis, universal-cover convention.

    Spectral: exact per-mode inversion plus a linear ramp for the mean
    (the ramp never wraps, matching cumulative integration on the cover).
    FD: cumulative trapezoid. Both vanish at index 0 along the axis.
    """
    h = grid.hx if axis == 0 else grid.hy
    periodic = grid.periodic_x if axis == 0 else grid.periodic_y
    if method == "spectral" and periodic:
        n = values.shape[axis]
        k = _wavenumbers(n, h)
        shape = [1, 1]
        shape[axis] = -1
        vhat = np.fft.fft(values, axis=axis)
        kk = k.reshape(shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            fhat = np.where(kk != 0, vhat / np.where(kk != 0, 1j * kk, 1.0), 0.0)
        osc = np.fft.ifft(fhat, axis=axis)
        mean = np.take(vhat, 0, axis=axis) / n
        ramp = (h * np.arange(n)).reshape(shape)
        out = osc + np.expand_dims(mean, axis) * ramp
        return out - np.expand_dims(np.take(out, 0, axis=axis), axis)
    return cumtrapz_2d(values, h, axis)


def _integrate_pq(P: np.ndarray, Q: np.ndarray, grid: Grid, base: BasePoint, method: str):
    """Path integral of the real-basis form P dx + Q dy from the base point.

    Row-first paths (x-leg along the base row, then the y-leg) give the
    returned field; the column-first recomputation feeds the
    path-independence diagnostic only.
    """
    ix0, iy0 = base.ix, base.iy

    cy = _antideriv_axis(Q, grid, 1, method)
    cy = cy - cy[:, iy0][:, None]
    cx = _antideriv_axis(P, grid, 0, method)
    cx = cx - cx[ix0, :][None, :]

    lx = cx[:, iy0]
    F_row = lx[:, None] + cy
    ly = cy[ix0, :]
    F_col = ly[None, :] + cx
    discrepancy = float(np.max(np.abs(F_row - F_col)))

    period_x = complex(grid.hx * P[:, iy0].sum()) if grid.periodic_x else 0.0 + 0.0j
    period_y = complex(grid.hy * Q[ix0, :].sum()) if grid.periodic_y else 0.0 + 0.0j
    return F_row, discrepancy, (period_x, period_y)


def integrate_form(omega: OneForm, base: BasePoint = BasePoint(), method: str = "auto") -> IntegrationResult:
    """Integrate a (nearly) closed 1-form from the base point.

    Returns F with F(base) = 0 and dF approximately omega, the max
    row-first vs column-first discrepancy, and the periods over the two
    fundamental cycles (0 on non-periodic axes). Closedness is not
    enforced; a large discrepancy is the caller's diagnostic.
    """
    grid = omega.grid
    base.validate(grid)
    method = resolve_method(grid, method)
    F, disc, periods = _integrate_pq(omega.dx_coefficient(), omega.dy_coefficient(), grid, base, method)
    return IntegrationResult(ComplexField(grid, F), disc, periods)
