"""Dual numbers a + eps*b (eps**2 = 0) and their 3-vector / 3x3-matrix modules.

Scalars may be floats or ``fractions.Fraction``; the exact kind is kept through
every operation so that identities can be checked with zero residual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import _linalg as la


@dataclass(frozen=True)
class DualScalar:
    """A dual number ``primal + eps * dual``."""

    primal: object
    dual: object = 0

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return DualScalar(self.primal + other.primal, self.dual + other.dual)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return DualScalar(self.primal - other.primal, self.dual - other.dual)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return DualScalar(-self.primal, -self.dual)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return dual_mul(self, other)

    __rmul__ = __mul__

    def inverse(self) -> "DualScalar":
        """(a + eps*b)^-1 = 1/a - eps*b/a^2; pure-dual numbers are zero divisors."""
        if self.primal == 0:
            raise ZeroDivisionError("dual number with zero primal part is not invertible")
        a = self.primal
        one = Fraction(1) if isinstance(a, Fraction) else 1.0
        return DualScalar(one / a, -self.dual / (a * a))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __repr__(self) -> str:
        return f"DualScalar({self.primal!r}, {self.dual!r})"


def _coerce(x):
    if isinstance(x, DualScalar):
        return x
    if isinstance(x, (int, float, Fraction, np.floating, np.integer)):
        return DualScalar(x, 0)
    return None


def dual_mul(x: DualScalar, y: DualScalar) -> DualScalar:
    return DualScalar(x.primal * y.primal, x.primal * y.dual + x.dual * y.primal)


class DualVector3:
    """Element of D^3 stored as a pair of 3-vectors."""

    __slots__ = ("primal", "dual")

    def __init__(self, primal, dual=None):
        primal = la.as_array(primal, (3,))
        if dual is None:
            dual = la.zeros_like_kind(primal.dtype == object, 3)
        object.__setattr__(self, "primal", primal)
        object.__setattr__(self, "dual", la.as_array(dual, (3,)))

    def __setattr__(self, name, value):
        raise AttributeError("DualVector3 is immutable")

    def __add__(self, other: "DualVector3") -> "DualVector3":
        return DualVector3(self.primal + other.primal, self.dual + other.dual)

    def __sub__(self, other: "DualVector3") -> "DualVector3":
        return DualVector3(self.primal - other.primal, self.dual - other.dual)

    def __neg__(self) -> "DualVector3":
        return DualVector3(-self.primal, -self.dual)

    def scale(self, s: DualScalar) -> "DualVector3":
        s = _coerce(s)
        return DualVector3(s.primal * self.primal, s.primal * self.dual + s.dual * self.primal)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DualVector3):
            return NotImplemented
        return bool(np.all(self.primal == other.primal) and np.all(self.dual == other.dual))

    __hash__ = None

    def __repr__(self) -> str:
        return f"DualVector3({list(self.primal)}, {list(self.dual)})"


class DualMatrix3:
    """A dual 3x3 matrix ``primal + eps * dual``."""

    __slots__ = ("primal", "dual")

    def __init__(self, primal, dual=None):
        primal = la.as_array(primal, (3, 3))
        if dual is None:
            dual = la.zeros_like_kind(primal.dtype == object, (3, 3))
        object.__setattr__(self, "primal", primal)
        object.__setattr__(self, "dual", la.as_array(dual, (3, 3)))

    def __setattr__(self, name, value):
        raise AttributeError("DualMatrix3 is immutable")

    @classmethod
    def from_columns(cls, c0: DualVector3, c1: DualVector3, c2: DualVector3) -> "DualMatrix3":
        return cls(
            np.column_stack([c0.primal, c1.primal, c2.primal]),
            np.column_stack([c0.dual, c1.dual, c2.dual]),
        )

    def column(self, j: int) -> DualVector3:
        return DualVector3(self.primal[:, j], self.dual[:, j])

    def __matmul__(self, other):
        if isinstance(other, DualMatrix3):
            return DualMatrix3(
                self.primal @ other.primal,
                self.primal @ other.dual + self.dual @ other.primal,
            )
        if isinstance(other, DualVector3):
            return DualVector3(
                self.primal @ other.primal,
                self.primal @ other.dual + self.dual @ other.primal,
            )
        return NotImplemented

    def transpose(self) -> "DualMatrix3":
        return DualMatrix3(self.primal.T, self.dual.T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DualMatrix3):
            return NotImplemented
        return bool(np.all(self.primal == other.primal) and np.all(self.dual == other.dual))

    __hash__ = None

    def __repr__(self) -> str:
        return f"DualMatrix3({self.primal.tolist()}, {self.dual.tolist()})"


def dual_dot(u: DualVector3, w: DualVector3) -> DualScalar:
    return DualScalar(la.dot(u.primal, w.primal), la.dot(u.primal, w.dual) + la.dot(u.dual, w.primal))


def dual_cross(u: DualVector3, w: DualVector3) -> DualVector3:
    """Dual vector product; on twists this is the Lie bracket of se(3)."""
    return DualVector3(
        la.cross(u.primal, w.primal),
        la.cross(u.primal, w.dual) + la.cross(u.dual, w.primal),
    )


def dual_det3(m: DualMatrix3) -> DualScalar:
    """Determinant over D: the dual part replaces one column at a time by its dual part."""
    cols = [m.primal[:, j] for j in range(3)]
    dcols = [m.dual[:, j] for j in range(3)]
    primal = la.det_columns(*cols)
    dual = (
        la.det_columns(dcols[0], cols[1], cols[2])
        + la.det_columns(cols[0], dcols[1], cols[2])
        + la.det_columns(cols[0], cols[1], dcols[2])
    )
    return DualScalar(primal, dual)


class OrthogonalityReport(NamedTuple):
    ok: bool
    orthogonality: float  # max |A0 A0^t - I|
    skewness: float  # max |X + X^t| with X = A1 A0^t
    determinant: float  # |det A0 - 1|

    def __bool__(self) -> bool:
        return self.ok


def is_dual_orthogonal(m: DualMatrix3, tol: float = 1e-9) -> OrthogonalityReport:
    """Check membership of SO(3, D) by its primal/dual conditions.

    A0 A0^t = I, A1 A0^t skew-symmetric and det A0 = 1, each to within ``tol``
    in the entrywise max-norm.  Use ``tol=0`` for exact matrices.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    a0, a1 = m.primal, m.dual
    exact = a0.dtype == object and a1.dtype == object
    ortho = la.max_abs(a0 @ a0.T - la.identity3(exact))
    x = a1 @ a0.T
    skew = la.max_abs(x + x.T)
    det = abs(float(la.det3(a0) - 1))
    ok = ortho <= tol and skew <= tol and det <= tol
    return OrthogonalityReport(ok, ortho, skew, det)
