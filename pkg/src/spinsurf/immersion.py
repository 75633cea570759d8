"""Assembly of the representation 1-forms and their integration into
immersions of the domain in R^4, plus geometric defect diagnostics.

The two closed forms built from a left/right spinor pair are

    w1 = s1 t1 dz - conj(s2) conj(t2) dzbar
    w2 = s1 t2 dz + conj(s2) conj(t1) dzbar

and their path integrals give X1 + iX2 and X3 + iX4. The Lagrangian
specialization replaces t by (cos(beta/2), sin(beta/2)) and swaps the two
middle coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import adaptive_diff, exterior_derivative, integrate_form, resolve_method
from .dirac import LeftSpinor, RightSpinor
from .errors import GridMismatchError
from .fields import BasePoint, ComplexField, Grid, OneForm

__all__ = [
    "Immersion4",
    "GeometryReport",
    "konopelchenko_oneforms",
    "lagrangian_oneforms",
    "integrate_immersion",
    "to_lagrangian_coordinates",
    "conformality_defect",
    "conformal_factor",
    "lagrangian_defect",
    "geometry_report",
]

DEGENERACY_RATIO = 1e-8


@dataclass(frozen=True)
class Immersion4:
    """Four real coordinate fields on a shared grid, zero at the base point."""

    grid: Grid
    X1: np.ndarray
    X2: np.ndarray
    X3: np.ndarray
    X4: np.ndarray
    base: BasePoint = BasePoint()
    path_discrepancy: float = 0.0
    periods: tuple[complex, complex, complex, complex] = (0j, 0j, 0j, 0j)

    def __post_init__(self):
        for comp in (self.X1, self.X2, self.X3, self.X4):
            if comp.shape != self.grid.shape:
                raise GridMismatchError("immersion component shape does not match grid")
            if not np.all(np.isfinite(comp)):
                raise ValueError("immersion contains non-finite values")

    @property
    def W1(self) -> np.ndarray:
        return self.X1 + 1j * self.X2

    @property
    def W2(self) -> np.ndarray:
        return self.X3 + 1j * self.X4

    def components(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return (self.X1, self.X2, self.X3, self.X4)


@dataclass(frozen=True)
class GeometryReport:
    """Sup-norms of every defect the representation claims to annihilate."""

    conformality_defect_sup: float
    lagrangian_defect_sup: float
    conformal_factor_min: float
    closedness_residual_sup: float
    path_discrepancy: float
    periods: tuple[complex, complex, complex, complex] = (0j, 0j, 0j, 0j)
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            "closedness_sup": self.closedness_residual_sup,
            "conformality_sup": self.conformality_defect_sup,
            "lagrangian_sup": self.lagrangian_defect_sup,
            "conformal_factor_min": self.conformal_factor_min,
            "path_discrepancy": self.path_discrepancy,
            "periods": [[z.real, z.imag] for z in self.periods],
            "degenerate": self.degenerate,
        }


def _shared_grid(s: LeftSpinor, t: RightSpinor) -> Grid:
    if s.grid != t.grid:
        raise GridMismatchError("left and right spinors live on different grids")
    return s.grid


def konopelchenko_oneforms(s: LeftSpinor, t: RightSpinor) -> tuple[OneForm, OneForm]:
    """The two representation 1-forms; pointwise products, no derivatives."""
    grid = _shared_grid(s, t)
    s1, s2b = s.s1.values, np.conj(s.s2.values)
    t1, t2 = t.t1.values, t.t2.values
    w1 = OneForm(ComplexField(grid, s1 * t1), ComplexField(grid, -s2b * np.conj(t2)))
    w2 = OneForm(ComplexField(grid, s1 * t2), ComplexField(grid, s2b * np.conj(t1)))
    return w1, w2


def lagrangian_oneforms(s: LeftSpinor, beta: ComplexField) -> tuple[OneForm, OneForm]:
    """Direct assembly of the Lagrangian-case forms from the angle field.

    Identical arithmetic to ``konopelchenko_oneforms`` with the canonical
    right spinor; kept as an independent code path for the reduction check.
    """
    grid = s.grid
    if beta.grid != grid:
        raise GridMismatchError("beta and spinor grids differ")
    half = 0.5 * beta.real
    c, sn = np.cos(half), np.sin(half)
    s1, s2b = s.s1.values, np.conj(s.s2.values)
    w1 = OneForm(ComplexField(grid, s1 * c), ComplexField(grid, -s2b * sn))
    w2 = OneForm(ComplexField(grid, s1 * sn), ComplexField(grid, s2b * c))
    return w1, w2


def integrate_immersion(w1: OneForm, w2: OneForm, base: BasePoint = BasePoint(),
                        method: str = "auto") -> Immersion4:
    """Integrate the two representation forms into the four coordinates."""
    if w1.grid != w2.grid:
        raise GridMismatchError("forms live on different grids")
    r1 = integrate_form(w1, base, method)
    r2 = integrate_form(w2, base, method)
    return Immersion4(
        w1.grid,
        r1.field.real.copy(), r1.field.imag.copy(),
        r2.field.real.copy(), r2.field.imag.copy(),
        base=base,
        path_discrepancy=max(r1.path_discrepancy, r2.path_discrepancy),
        periods=(r1.periods[0], r1.periods[1], r2.periods[0], r2.periods[1]),
    )


def to_lagrangian_coordinates(X: Immersion4) -> Immersion4:
    """Swap the two middle coordinates (an involution)."""
    return Immersion4(X.grid, X.X1, X.X3, X.X2, X.X4, X.base, X.path_discrepancy, X.periods)


def _frame(X: Immersion4, method: str):
    """Discrete tangent vectors (X_x, X_y) as two lists of real arrays.

    Seam-aware stencils: coordinates of an immersion may grow linearly
    on a periodic chart (universal-cover integration), which wrapped
    differences would wreck at the seam.
    """
    grid = X.grid
    method = resolve_method(grid, method)
    Xx, Xy = [], []
    for comp in X.components():
        Xx.append(adaptive_diff(comp, grid, 0, method).real)
        Xy.append(adaptive_diff(comp, grid, 1, method).real)
    return Xx, Xy


def conformality_defect(X: Immersion4, method: str = "auto"):
    """(|X_x|^2 - |X_y|^2, <X_x, X_y>), both ~ 0 for valid data."""
    Xx, Xy = _frame(X, method)
    d1 = sum(a * a for a in Xx) - sum(a * a for a in Xy)
    d2 = sum(a * b for a, b in zip(Xx, Xy))
    return d1, d2


def conformal_factor(s: LeftSpinor, t: RightSpinor) -> np.ndarray:
    """(|s1|^2 + |s2|^2)(|t1|^2 + |t2|^2) = |X_x|^2 = |X_y|^2.

    The identity with the metric of the integrated immersion holds up to
    discretization error; it is checked, not assumed, in the test suite.
    """
    _shared_grid(s, t)
    ns = np.abs(s.s1.values) ** 2 + np.abs(s.s2.values) ** 2
    nt = np.abs(t.t1.values) ** 2 + np.abs(t.t2.values) ** 2
    return ns * nt


def lagrangian_defect(Y: Immersion4, method: str = "auto") -> np.ndarray:
    """Symplectic area density omega(Y_x, Y_y) = -Im<Y_x, Y_y>_H.

    Expects Lagrangian coordinates, i.e. the complex structure pairing
    (Y1 + iY2, Y3 + iY4); vanishes exactly when the surface is Lagrangian.
    """
    Yx, Yy = _frame(Y, method)
    v1x, v2x = Yx[0] + 1j * Yx[1], Yx[2] + 1j * Yx[3]
    v1y, v2y = Yy[0] + 1j * Yy[1], Yy[2] + 1j * Yy[3]
    herm = v1x * np.conj(v1y) + v2x * np.conj(v2y)
    return -herm.imag


def geometry_report(s: LeftSpinor, t: RightSpinor, X: Immersion4, Y: Immersion4,
                    method: str = "auto") -> GeometryReport:
    """Aggregate every defect diagnostic into one report."""
    w1, w2 = konopelchenko_oneforms(s, t)
    closedness = max(exterior_derivative(w1, method).max_abs(),
                     exterior_derivative(w2, method).max_abs())
    d1, d2 = conformality_defect(X, method)
    conf = max(float(np.max(np.abs(d1))), float(np.max(np.abs(d2))))
    lag = float(np.max(np.abs(lagrangian_defect(Y, method))))
    u = conformal_factor(s, t)
    u_min, u_max = float(np.min(u)), float(np.max(u))
    return GeometryReport(
        conformality_defect_sup=conf,
        lagrangian_defect_sup=lag,
        conformal_factor_min=u_min,
        closedness_residual_sup=closedness,
        path_discrepancy=X.path_discrepancy,
        periods=X.periods,
        degenerate=u_min < DEGENERACY_RATIO * u_max or u_max == 0.0,
    )
