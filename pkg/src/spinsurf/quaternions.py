"""Quaternionic reformulation of the representation.

Quaternions are stored as complex pairs (w1, w2) with q = w1 + w2 j, so
q = q0 + i q1 + j q2 + k q3 corresponds to w1 = q0 + i q1, w2 = q2 + i q3.
Multiplication follows from j c = conj(c) j:

    (w1 + w2 j)(v1 + v2 j) = (w1 v1 - w2 conj(v2)) + (w1 v2 + w2 conj(v1)) j

A left spinor embeds as a = s1 + j s2 (pair (s1, conj(s2)) -- note j on
the left) and a right spinor as b = t1 + t2 j (pair (t1, t2)). The Dirac
systems become da/dzbar = a p j and dzbar\\db = p j b, the representation
integrand is the sandwiched product a dz b, and the resulting surface is
identical to the complex pipeline's.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import d_dx, d_dy, d_dz, d_dzbar, integrate_form
from .dirac import LeftSpinor, Potential, RightSpinor
from .errors import GridMismatchError
from .fields import BasePoint, ComplexField, Grid, OneForm
from .immersion import integrate_immersion, konopelchenko_oneforms

__all__ = [
    "Quaternion",
    "QuaternionField",
    "QuaternionOneForm",
    "embed_left",
    "embed_right",
    "left_dzbar",
    "right_dzbar",
    "quaternionic_dirac_residual",
    "product_form",
    "exterior_derivative_q",
    "integrate_q",
    "equivalence_check",
]


def _qmul(w1, w2, v1, v2):
    """Pair-form product of (w1 + w2 j)(v1 + v2 j); works on scalars and arrays."""
    return w1 * v1 - w2 * np.conj(v2), w1 * v2 + w2 * np.conj(v1)


@dataclass(frozen=True)
class Quaternion:
    """A single quaternion as a complex pair."""

    w1: complex = 0j
    w2: complex = 0j

    @classmethod
    def from_components(cls, q0: float, q1: float, q2: float, q3: float) -> Quaternion:
        return cls(complex(q0, q1), complex(q2, q3))

    @property
    def components(self) -> tuple[float, float, float, float]:
        return (self.w1.real, self.w1.imag, self.w2.real, self.w2.imag)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(*_qmul(self.w1, self.w2, other.w1, other.w2))
        return Quaternion(self.w1 * other, self.w2 * np.conj(other))

    def __rmul__(self, other):
        # other is a complex/real scalar: other * q
        return Quaternion(other * self.w1, other * self.w2)

    def __add__(self, other):
        return Quaternion(self.w1 + other.w1, self.w2 + other.w2)

    def __sub__(self, other):
        return Quaternion(self.w1 - other.w1, self.w2 - other.w2)

    def __neg__(self):
        return Quaternion(-self.w1, -self.w2)

    def conjugate(self) -> Quaternion:
        return Quaternion(np.conj(self.w1), -self.w2)

    def norm(self) -> float:
        return float(np.sqrt(abs(self.w1) ** 2 + abs(self.w2) ** 2))

    def isclose(self, other: Quaternion, tol: float = 1e-12) -> bool:
        return abs(self.w1 - other.w1) <= tol and abs(self.w2 - other.w2) <= tol


ONE = Quaternion(1, 0)
I = Quaternion(1j, 0)
J = Quaternion(0, 1)
K = Quaternion(0, 1j)


@dataclass(frozen=True)
class QuaternionField:
    """A quaternion per grid point, stored as two complex arrays."""

    grid: Grid
    w1: np.ndarray
    w2: np.ndarray

    def __post_init__(self):
        for comp in (self.w1, self.w2):
            if comp.shape != self.grid.shape:
                raise GridMismatchError("quaternion field shape does not match grid")
            if not np.all(np.isfinite(comp)):
                raise ValueError("quaternion field contains non-finite values")

    @classmethod
    def constant(cls, grid: Grid, q: Quaternion) -> QuaternionField:
        return cls(grid, np.full(grid.shape, q.w1, dtype=np.complex128),
                   np.full(grid.shape, q.w2, dtype=np.complex128))

    def components(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return (self.w1.real, self.w1.imag, self.w2.real, self.w2.imag)

    def _check(self, other: QuaternionField) -> None:
        if other.grid != self.grid:
            raise GridMismatchError("quaternion fields live on different grids")

    def __mul__(self, other):
        if isinstance(other, QuaternionField):
            self._check(other)
            return QuaternionField(self.grid, *_qmul(self.w1, self.w2, other.w1, other.w2))
        if isinstance(other, Quaternion):
            return QuaternionField(self.grid, *_qmul(self.w1, self.w2, other.w1, other.w2))
        raise TypeError(f"cannot multiply QuaternionField by {type(other)!r}")

    def __rmul__(self, other):
        if isinstance(other, Quaternion):
            return QuaternionField(self.grid, *_qmul(other.w1, other.w2, self.w1, self.w2))
        raise TypeError(f"cannot multiply {type(other)!r} by QuaternionField")

    def __add__(self, other):
        self._check(other)
        return QuaternionField(self.grid, self.w1 + other.w1, self.w2 + other.w2)

    def __sub__(self, other):
        self._check(other)
        return QuaternionField(self.grid, self.w1 - other.w1, self.w2 - other.w2)

    def max_abs(self) -> float:
        return float(np.max(np.sqrt(np.abs(self.w1) ** 2 + np.abs(self.w2) ** 2)))


@dataclass(frozen=True)
class QuaternionOneForm:
    """Quaternion-valued form P dx + Q dy."""

    P: QuaternionField
    Q: QuaternionField

    def __post_init__(self):
        if self.P.grid != self.Q.grid:
            raise GridMismatchError("form coefficients live on different grids")

    @property
    def grid(self) -> Grid:
        return self.P.grid


def embed_left(s: LeftSpinor) -> QuaternionField:
    """a = s1 + j s2, pair (s1, conj(s2))."""
    return QuaternionField(s.grid, s.s1.values.copy(), np.conj(s.s2.values))


def embed_right(t: RightSpinor) -> QuaternionField:
    """b = t1 + t2 j, pair (t1, t2)."""
    return QuaternionField(t.grid, t.t1.values.copy(), t.t2.values.copy())


def left_dzbar(a: QuaternionField, method: str = "auto") -> QuaternionField:
    """da/dzbar for left coefficients: pair (dzbar w1, dz w2).

    The second component picks up the conjugate stencil because the pair
    stores conj(s2) while the derivative acts on s2 behind the j.
    """
    grid = a.grid
    dw1 = d_dzbar(ComplexField(grid, a.w1), method).values
    dw2 = d_dz(ComplexField(grid, a.w2), method).values
    return QuaternionField(grid, dw1, dw2)


def right_dzbar(b: QuaternionField, method: str = "auto") -> QuaternionField:
    """dzbar\\db for right coefficients: componentwise dzbar on the pair."""
    grid = b.grid
    dw1 = d_dzbar(ComplexField(grid, b.w1), method).values
    dw2 = d_dzbar(ComplexField(grid, b.w2), method).values
    return QuaternionField(grid, dw1, dw2)


def _embed_potential(p: Potential) -> QuaternionField:
    # p lives in span{1, i} so that p i = i p, which the closedness
    # cancellation relies on.
    return QuaternionField(p.grid, p.p.values.copy(), np.zeros(p.grid.shape, dtype=np.complex128))


def quaternionic_dirac_residual(a: QuaternionField, b: QuaternionField, p: Potential,
                                method: str = "auto"):
    """Residuals of da/dzbar = a p j and dzbar\\db = p j b."""
    if a.grid != b.grid or a.grid != p.grid:
        raise GridMismatchError("quaternion fields and potential grids differ")
    pq = _embed_potential(p)
    ra = left_dzbar(a, method) - (a * pq) * J
    rb = right_dzbar(b, method) - (pq * J) * b
    return ra, rb


def product_form(a: QuaternionField, b: QuaternionField) -> QuaternionOneForm:
    """The integrand a dz b as P dx + Q dy with P = a b, Q = a i b.

    The i stays sandwiched between the non-commuting factors; commuting
    it out is exactly the sign error the calculus forbids.
    """
    if a.grid != b.grid:
        raise GridMismatchError("quaternion fields live on different grids")
    return QuaternionOneForm(a * b, (a * I) * b)


def exterior_derivative_q(omega: QuaternionOneForm, method: str = "auto") -> QuaternionField:
    """dx^dy coefficient of d(P dx + Q dy) = (dQ/dx - dP/dy) dx^dy."""
    grid = omega.grid
    out = []
    for comp_q, comp_p in zip((omega.Q.w1, omega.Q.w2), (omega.P.w1, omega.P.w2)):
        dq = d_dx(ComplexField(grid, comp_q), method).values
        dp = d_dy(ComplexField(grid, comp_p), method).values
        out.append(dq - dp)
    return QuaternionField(grid, out[0], out[1])


def integrate_q(a: QuaternionField, b: QuaternionField, base: BasePoint = BasePoint(),
                method: str = "auto") -> QuaternionField:
    """Path integral of a dz b from the base point, componentwise."""
    omega = product_form(a, b)
    grid = omega.grid
    out = []
    for P, Q in ((omega.P.w1, omega.Q.w1), (omega.P.w2, omega.Q.w2)):
        # convert P dx + Q dy to A dz + B dzbar for the shared integrator
        A = ComplexField(grid, 0.5 * (P - 1j * Q))
        B = ComplexField(grid, 0.5 * (P + 1j * Q))
        out.append(integrate_form(OneForm(A, B), base, method).field.values)
    return QuaternionField(grid, out[0], out[1])


def equivalence_check(s: LeftSpinor, t: RightSpinor, base: BasePoint = BasePoint(),
                      method: str = "auto") -> float:
    """Sup distance between the complex and quaternionic pipelines.

    The two integrands are algebraically identical, so the distance is
    small regardless of whether the spinors solve the Dirac systems.
    """
    w1, w2 = konopelchenko_oneforms(s, t)
    X = integrate_immersion(w1, w2, base, method)
    q = integrate_q(embed_left(s), embed_right(t), base, method)
    qc = q.components()
    return max(float(np.max(np.abs(qc[i] - x))) for i, x in enumerate(X.components()))
