"""Vectorized numpy implementations of the hot kernels.

These are the fallback for the compiled extension in ``_kernels.pyx``;
both expose the same two functions and must agree to rounding error.
"""

import numpy as np

BACKEND = "numpy"


def fd_diff_2d(values, h, axis, periodic):
    """Second-order first derivative of a complex 2-d array along ``axis``.

    Central differences in the interior; wrapped central differences when
    ``periodic``; otherwise one-sided second-order stencils at the two
    boundary lines.
    """
    v = np.asarray(values, dtype=np.complex128)
    if periodic:
        return (np.roll(v, -1, axis=axis) - np.roll(v, 1, axis=axis)) / (2.0 * h)
    out = np.empty_like(v)
    sl = [slice(None), slice(None)]

    def at(idx):
        s = list(sl)
        s[axis] = idx
        return tuple(s)

    out[at(slice(1, -1))] = (v[at(slice(2, None))] - v[at(slice(None, -2))]) / (2.0 * h)
    out[at(0)] = (-3.0 * v[at(0)] + 4.0 * v[at(1)] - v[at(2)]) / (2.0 * h)
    out[at(-1)] = (3.0 * v[at(-1)] - 4.0 * v[at(-2)] + v[at(-3)]) / (2.0 * h)
    return out


def cumtrapz_2d(values, h, axis):
    """Cumulative trapezoidal antiderivative along ``axis``, zero at index 0."""
    v = np.asarray(values, dtype=np.complex128)
    n = v.shape[axis]
    out = np.zeros_like(v)
    sl = [slice(None), slice(None)]

    def at(idx):
        s = list(sl)
        s[axis] = idx
        return tuple(s)

    steps = 0.5 * h * (v[at(slice(1, None))] + v[at(slice(None, -1))])
    out[at(slice(1, None))] = np.cumsum(steps, axis=axis)
    return out
