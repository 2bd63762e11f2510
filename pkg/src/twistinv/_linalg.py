"""Small 3-vector helpers that work for both float and exact (Fraction) scalars.

numpy's ``cross``/``linalg.det`` either reject object arrays or route through
LAPACK, so the few operations needed here are spelled out explicitly.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np


def is_exact(values) -> bool:
    """True when every entry is rational and at least one is a ``Fraction``.

    Plain ints alone do not switch to exact mode, so ``[1, 0, 0]`` is a float
    vector while ``[Fraction(1), 0, 0]`` is an exact one.
    """
    flat = np.asarray(values, dtype=object).ravel()
    return any(isinstance(x, Fraction) for x in flat) and all(
        isinstance(x, Rational) and not isinstance(x, bool) for x in flat
    )


def as_array(values, shape=None) -> np.ndarray:
    """Return a read-only array; exact inputs keep ``Fraction`` entries."""
    if is_exact(values):
        flat = [Fraction(x) for x in np.asarray(values, dtype=object).ravel()]
        arr = np.empty(len(flat), dtype=object)
        arr[:] = flat
        arr = arr.reshape(np.shape(values))
    else:
        arr = np.array(values, dtype=float)
    if shape is not None and arr.shape != shape:
        raise ValueError(f"expected shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


def zeros_like_kind(exact: bool, shape):
    if exact:
        arr = np.empty(shape, dtype=object)
        arr.fill(Fraction(0))
        return arr
    return np.zeros(shape)


def identity3(exact: bool = False) -> np.ndarray:
    m = zeros_like_kind(exact, (3, 3))
    for i in range(3):
        m[i, i] = Fraction(1) if exact else 1.0
    return m


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b) -> np.ndarray:
    out = np.empty(3, dtype=np.result_type(np.asarray(a), np.asarray(b)))
    out[0] = a[1] * b[2] - a[2] * b[1]
    out[1] = a[2] * b[0] - a[0] * b[2]
    out[2] = a[0] * b[1] - a[1] * b[0]
    return out


def det3(m):
    """Determinant of a 3x3 array by cofactor expansion (exact on Fractions)."""
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def det_columns(a, b, c):
    """The bracket [a b c]: determinant of the matrix with columns a, b, c."""
    return dot(a, cross(b, c))


def max_abs(values) -> float:
    arr = np.asarray(values, dtype=object).ravel()
    if arr.size == 0:
        return 0.0
    return float(max(abs(x) for x in arr))
