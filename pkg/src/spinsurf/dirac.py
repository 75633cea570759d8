"""Potentials and the two Dirac-type spinor systems.

The left system couples (s1, s2) through a potential p:

    d s1 / dzbar = -conj(p) conj(s2),   d conj(s2) / dz = p s1

and the right system couples (t1, t2) with the conjugation pattern moved
onto p:

    d t1 / dzbar = -p conj(t2),         d conj(t2) / dz = conj(p) t1

Residual evaluators report how far given fields are from solving these;
``solve_left_dirac`` is a Picard iteration on doubly periodic grids, and
``constant_p_left_family`` is the analytic plane-wave oracle for constant
potentials.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import adaptive_diff, d_dz, d_dzbar, resolve_method
from .errors import DivergenceError, GridMismatchError, UnsupportedDomainError, ValidationError
from .fields import ComplexField, Grid

__all__ = [
    "Potential",
    "LeftSpinor",
    "RightSpinor",
    "potential_from_beta",
    "constant_potential",
    "left_dirac_residual",
    "right_dirac_residual",
    "canonical_right_spinor",
    "constant_p_left_family",
    "solve_left_dirac",
]

REAL_TOL = 1e-12


@dataclass(frozen=True)
class Potential:
    """The complex potential driving both Dirac systems.

    ``source`` records whether p came from a Lagrangian angle field
    ("from_beta", in which case ``beta`` is kept) or was given directly.
    """

    p: ComplexField
    source: str = "direct"
    beta: ComplexField | None = None

    @property
    def grid(self) -> Grid:
        return self.p.grid


@dataclass(frozen=True)
class LeftSpinor:
    s1: ComplexField
    s2: ComplexField

    def __post_init__(self):
        if self.s1.grid != self.s2.grid:
            raise GridMismatchError("spinor components live on different grids")

    @property
    def grid(self) -> Grid:
        return self.s1.grid


@dataclass(frozen=True)
class RightSpinor:
    t1: ComplexField
    t2: ComplexField

    def __post_init__(self):
        if self.t1.grid != self.t2.grid:
            raise GridMismatchError("spinor components live on different grids")

    @property
    def grid(self) -> Grid:
        return self.t1.grid


def _require_real(f: ComplexField, what: str) -> None:
    if np.max(np.abs(f.imag)) > REAL_TOL:
        raise ValidationError(f"{what} must be real-valued (max |Im| = {np.max(np.abs(f.imag)):.3e})")


def potential_from_beta(beta: ComplexField, method: str = "auto") -> Potential:
    """p = (1/2) d(beta)/dzbar for a real angle field beta.

    The angle itself need not respect the periodic closure even when all
    derived data do (beta = 2x on the torus winds by 4 pi), so the
    derivative is seam-aware and falls back to one-sided stencils on an
    axis where the angle fails to wrap.
    """
    _require_real(beta, "beta")
    grid = beta.grid
    method = resolve_method(grid, method)
    bx = adaptive_diff(beta.values, grid, 0, method)
    by = adaptive_diff(beta.values, grid, 1, method)
    p = ComplexField(grid, 0.25 * (bx + 1j * by))
    return Potential(p, source="from_beta", beta=beta)


def constant_potential(grid: Grid, p0: complex) -> Potential:
    return Potential(ComplexField.constant(grid, p0), source="direct")


def _check_shared_grid(grid_a: Grid, grid_b: Grid) -> None:
    if grid_a != grid_b:
        raise GridMismatchError("spinor and potential grids differ")


def left_dirac_residual(s: LeftSpinor, p: Potential, method: str = "auto"):
    """Residuals (r1, r2) of the left system; both vanish iff s solves it."""
    _check_shared_grid(s.grid, p.grid)
    pv = p.p.values
    r1 = d_dzbar(s.s1, method).values + np.conj(pv) * np.conj(s.s2.values)
    r2 = d_dz(s.s2.conj(), method).values - pv * s.s1.values
    return ComplexField(s.grid, r1), ComplexField(s.grid, r2)


def right_dirac_residual(t: RightSpinor, p: Potential, method: str = "auto"):
    """Residuals (r1, r2) of the right system (conjugation on p, not t1)."""
    _check_shared_grid(t.grid, p.grid)
    pv = p.p.values
    r1 = d_dzbar(t.t1, method).values + pv * np.conj(t.t2.values)
    r2 = d_dz(t.t2.conj(), method).values - np.conj(pv) * t.t1.values
    return ComplexField(t.grid, r1), ComplexField(t.grid, r2)


def canonical_right_spinor(beta: ComplexField) -> RightSpinor:
    """(cos(beta/2), sin(beta/2)): solves the right system for the
    potential built from beta, with |t1|^2 + |t2|^2 = 1 exactly."""
    _require_real(beta, "beta")
    half = 0.5 * beta.real
    grid = beta.grid
    return RightSpinor(ComplexField(grid, np.cos(half)), ComplexField(grid, np.sin(half)))


def constant_p_left_family(p0: complex, a: float, b: float, alpha: complex, grid: Grid) -> LeftSpinor:
    """Plane-wave solutions of the left system with constant potential.

    s1 = alpha e^{i(ax+by)} and conj(s2) = gamma e^{i(ax+by)}, where gamma
    is fixed by the first equation. The parameters must satisfy the
    dispersion relation |p0|^2 = (a^2 + b^2) / 4.
    """
    if abs(abs(p0) ** 2 - (a * a + b * b) / 4.0) > 1e-10:
        raise ValidationError(
            f"dispersion relation violated: |p0|^2 = {abs(p0)**2:.6g}, (a^2+b^2)/4 = {(a*a+b*b)/4.0:.6g}"
        )
    x, y = grid.mesh()
    wave = np.exp(1j * (a * x + b * y))
    s1 = alpha * wave
    if abs(p0) < 1e-15:
        s2bar = np.zeros_like(wave)
    else:
        gamma = (b - 1j * a) * alpha / (2.0 * np.conj(p0))
        s2bar = gamma * wave
    return LeftSpinor(ComplexField(grid, s1), ComplexField(grid, np.conj(s2bar)))


def _invert_dzbar(rhs: np.ndarray, grid: Grid) -> np.ndarray:
    """Solve d u / dzbar = rhs on the torus, zero-mean modes only."""
    kx = 2.0 * np.pi * np.fft.fftfreq(grid.nx, d=grid.hx)[:, None]
    ky = 2.0 * np.pi * np.fft.fftfreq(grid.ny, d=grid.hy)[None, :]
    sym = 0.5 * (1j * kx - ky)  # Fourier symbol of d/dzbar
    rhat = np.fft.fft2(rhs)
    out = np.zeros_like(rhat)
    mask = np.abs(sym) > 0
    out[mask] = rhat[mask] / sym[mask]
    return np.fft.ifft2(out)


def _invert_dz(rhs: np.ndarray, grid: Grid) -> np.ndarray:
    """Solve d u / dz = rhs on the torus, zero-mean modes only."""
    kx = 2.0 * np.pi * np.fft.fftfreq(grid.nx, d=grid.hx)[:, None]
    ky = 2.0 * np.pi * np.fft.fftfreq(grid.ny, d=grid.hy)[None, :]
    sym = 0.5 * (1j * kx + ky)
    rhat = np.fft.fft2(rhs)
    out = np.zeros_like(rhat)
    mask = np.abs(sym) > 0
    out[mask] = rhat[mask] / sym[mask]
    return np.fft.ifft2(out)


def solve_left_dirac(p: Potential, seed: LeftSpinor, tol: float = 1e-10, max_iter: int = 200,
                     method: str = "spectral"):
    """Picard iteration for the left Dirac system on a doubly periodic grid.

    Each sweep inverts d/dzbar and d/dz spectrally on the zero-mean
    Fourier modes; the mean of the seed is injected as the free
    "holomorphic" data. Returns the first iterate whose max residual
    drops below ``tol`` together with the residual history.
    """
    grid = p.grid
    if not grid.doubly_periodic:
        raise UnsupportedDomainError("solve_left_dirac requires a doubly periodic grid")
    _check_shared_grid(seed.grid, grid)
    if tol <= 0:
        raise ValidationError("tol must be positive")

    pv = p.p.values
    s1 = seed.s1.values.copy()
    s2bar = np.conj(seed.s2.values)
    mean1 = s1.mean()
    mean2 = s2bar.mean()

    history: list[float] = []
    stagnant = 0
    for _ in range(max_iter + 1):
        if not (np.all(np.isfinite(s1)) and np.all(np.isfinite(s2bar))):
            raise DivergenceError("Picard iteration produced non-finite fields", history)
        current = LeftSpinor(ComplexField(grid, s1), ComplexField(grid, np.conj(s2bar)))
        r1, r2 = left_dirac_residual(current, p, method)
        res = max(r1.max_abs(), r2.max_abs())
        history.append(res)
        if res <= tol:
            return current, history
        if res > 1e100:
            raise DivergenceError(f"Picard iteration blew up (residual {res:.3e})", history)
        if len(history) >= 2 and abs(history[-1] - history[-2]) <= 1e-13 * max(1.0, res):
            stagnant += 1
            if stagnant >= 10:
                raise DivergenceError(
                    f"Picard iteration stalled at residual {res:.3e} above tol={tol:g}", history)
        else:
            stagnant = 0
        s1 = mean1 + _invert_dzbar(-np.conj(pv) * s2bar, grid)
        s2bar = mean2 + _invert_dz(pv * s1, grid)

    raise DivergenceError(
        f"Picard iteration did not reach tol={tol:g} in {max_iter} iterations "
        f"(last residual {history[-1]:.3e})",
        history,
    )
