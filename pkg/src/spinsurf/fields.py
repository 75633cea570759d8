"""Rectangular grids, complex scalar fields and 1-forms.

Fields are immutable value objects; every operation elsewhere in the
package is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatchError, ValidationError

__all__ = ["Grid", "ComplexField", "OneForm", "BasePoint"]

MIN_POINTS = 4  # minimum stencil support per axis


@dataclass(frozen=True)
class Grid:
    """Uniform rectangular grid on [x0, x0+...] x [y0, y0+...].

    A periodic axis identifies index n with index 0, so the period is
    ``nx*hx`` (resp. ``ny*hy``) and the last sample sits one spacing
    before the wrap point.
    """

    nx: int
    ny: int
    hx: float
    hy: float
    x0: float = 0.0
    y0: float = 0.0
    periodic_x: bool = False
    periodic_y: bool = False

    def __post_init__(self):
        if self.nx < MIN_POINTS or self.ny < MIN_POINTS:
            raise ValidationError(f"grid must be at least {MIN_POINTS}x{MIN_POINTS}, got {self.nx}x{self.ny}")
        if self.hx <= 0 or self.hy <= 0:
            raise ValidationError("grid spacings must be positive")

    @classmethod
    def torus(cls, nx: int, ny: int | None = None, length_x: float = 2 * np.pi, length_y: float | None = None) -> Grid:
        """Doubly periodic grid covering [0, Lx) x [0, Ly)."""
        ny = nx if ny is None else ny
        length_y = length_x if length_y is None else length_y
        return cls(nx, ny, length_x / nx, length_y / ny, periodic_x=True, periodic_y=True)

    @classmethod
    def rectangle(cls, nx: int, ny: int | None = None, length_x: float = 1.0, length_y: float | None = None,
                  x0: float = 0.0, y0: float = 0.0) -> Grid:
        """Non-periodic grid covering [x0, x0+Lx] x [y0, y0+Ly] inclusive."""
        ny = nx if ny is None else ny
        length_y = length_x if length_y is None else length_y
        return cls(nx, ny, length_x / (nx - 1), length_y / (ny - 1), x0=x0, y0=y0)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nx, self.ny)

    @property
    def doubly_periodic(self) -> bool:
        return self.periodic_x and self.periodic_y

    @property
    def xs(self) -> np.ndarray:
        return self.x0 + self.hx * np.arange(self.nx)

    @property
    def ys(self) -> np.ndarray:
        return self.y0 + self.hy * np.arange(self.ny)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, Y) coordinate arrays of shape (nx, ny)."""
        return np.meshgrid(self.xs, self.ys, indexing="ij")

    def zz(self) -> np.ndarray:
        """The complex coordinate z = x + iy sampled on the grid."""
        x, y = self.mesh()
        return x + 1j * y

    def refine(self, factor: int = 2) -> Grid:
        """Grid with ``factor`` times the resolution on the same domain."""
        if self.periodic_x:
            nx, hx = self.nx * factor, self.hx / factor
        else:
            nx, hx = (self.nx - 1) * factor + 1, self.hx / factor
        if self.periodic_y:
            ny, hy = self.ny * factor, self.hy / factor
        else:
            ny, hy = (self.ny - 1) * factor + 1, self.hy / factor
        return Grid(nx, ny, hx, hy, self.x0, self.y0, self.periodic_x, self.periodic_y)


@dataclass(frozen=True)
class ComplexField:
    """A complex scalar sampled on a grid, values[ix, iy]."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != self.grid.shape:
            raise ValidationError(f"field shape {v.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(v)):
            raise ValidationError("field contains non-finite values")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, grid: Grid, fn) -> ComplexField:
        """Sample fn(x, y) on the grid (fn must accept arrays)."""
        x, y = grid.mesh()
        return cls(grid, np.broadcast_to(np.asarray(fn(x, y), dtype=np.complex128), grid.shape))

    @classmethod
    def constant(cls, grid: Grid, value: complex) -> ComplexField:
        return cls(grid, np.full(grid.shape, value, dtype=np.complex128))

    def conj(self) -> ComplexField:
        return ComplexField(self.grid, np.conj(self.values))

    @property
    def real(self) -> np.ndarray:
        return self.values.real

    @property
    def imag(self) -> np.ndarray:
        return self.values.imag

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def _coerce(self, other):
        if isinstance(other, ComplexField):
            if other.grid != self.grid:
                raise GridMismatchError("fields live on different grids")
            return other.values
        return other

    def __add__(self, other):
        return ComplexField(self.grid, self.values + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ComplexField(self.grid, self.values - self._coerce(other))

    def __rsub__(self, other):
        return ComplexField(self.grid, self._coerce(other) - self.values)

    def __mul__(self, other):
        return ComplexField(self.grid, self.values * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return ComplexField(self.grid, -self.values)


@dataclass(frozen=True)
class OneForm:
    """A complex 1-form A dz + B dz_bar with dz = dx + i dy."""

    A: ComplexField
    B: ComplexField

    def __post_init__(self):
        if self.A.grid != self.B.grid:
            raise GridMismatchError("1-form coefficients live on different grids")

    @property
    def grid(self) -> Grid:
        return self.A.grid

    def dx_coefficient(self) -> np.ndarray:
        """Coefficient of dx in the (dx, dy) basis: A + B."""
        return self.A.values + self.B.values

    def dy_coefficient(self) -> np.ndarray:
        """Coefficient of dy in the (dx, dy) basis: i(A - B)."""
        return 1j * (self.A.values - self.B.values)


@dataclass(frozen=True)
class BasePoint:
    """Grid indices of the integration base point; constants of
    integration are dropped, so every antiderivative vanishes here."""

    ix: int = 0
    iy: int = 0

    def validate(self, grid: Grid) -> None:
        if not (0 <= self.ix < grid.nx and 0 <= self.iy < grid.ny):
            raise ValidationError(f"base point ({self.ix},{self.iy}) outside grid {grid.shape}")
