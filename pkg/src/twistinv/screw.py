"""Twists, Euclidean motions and the adjoint action of SE(3) on se(3).

A twist is stored in Plucker form ``(omega, v)``.  A motion ``(A, a)`` acts by

    omega -> A omega,    v -> hat(a) A omega + A v,

which is the partitioned 6x6 adjoint matrix ``[[A, 0], [hat(a) A, A]]``.
The same formula is applied for improper motions (det A = -1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from . import _linalg as la
from .dual import DualMatrix3, DualVector3, is_dual_orthogonal

INFINITE = math.inf
"""Pitch value reported for pure translations (omega = 0)."""

SKEW_TOL = 1e-12


class ZeroTwistError(ValueError):
    pass


class NotSkewError(ValueError):
    def __init__(self, residual: float):
        super().__init__(f"matrix is not skew-symmetric (max |S + S^t| = {residual:.3g})")
        self.residual = residual


class NotDualOrthogonalError(ValueError):
    def __init__(self, report):
        super().__init__(
            "dual matrix is not in SO(3, D): "
            f"orthogonality={report.orthogonality:.3g}, "
            f"skewness={report.skewness:.3g}, determinant={report.determinant:.3g}"
        )
        self.report = report


@dataclass(frozen=True, eq=False)
class Twist:
    """Element of se(3) as a Plucker pair: angular part ``omega``, linear part ``v``."""

    omega: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        both = la.as_array([list(self.omega), list(self.v)], (2, 3))
        object.__setattr__(self, "omega", both[0])
        object.__setattr__(self, "v", both[1])

    @property
    def exact(self) -> bool:
        return self.omega.dtype == object

    def is_zero(self) -> bool:
        return not (np.any(self.omega != 0) or np.any(self.v != 0))

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.omega, self.v])

    @classmethod
    def from_vector(cls, x) -> "Twist":
        x = list(x)
        if len(x) != 6:
            raise ValueError("a twist has 6 coordinates")
        return cls(x[:3], x[3:])

    def to_dual(self) -> DualVector3:
        return DualVector3(self.omega, self.v)

    @classmethod
    def from_dual(cls, u: DualVector3) -> "Twist":
        return cls(u.primal, u.dual)

    def __neg__(self) -> "Twist":
        return Twist(-self.omega, -self.v)

    def scaled(self, c) -> "Twist":
        return Twist(c * self.omega, c * self.v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Twist):
            return NotImplemented
        return bool(np.all(self.omega == other.omega) and np.all(self.v == other.v))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Twist(omega={self.omega.tolist()}, v={self.v.tolist()})"


@dataclass(frozen=True, eq=False)
class EuclideanMotion:
    """Rotation ``A`` followed by translation ``a``; ``parity`` is det A (+1 or -1)."""

    rotation: np.ndarray
    translation: np.ndarray
    parity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "rotation", la.as_array(self.rotation, (3, 3)))
        object.__setattr__(self, "translation", la.as_array(self.translation, (3,)))
        if self.parity not in (1, -1):
            raise ValueError("parity must be +1 or -1")

    @classmethod
    def identity(cls, exact: bool = False) -> "EuclideanMotion":
        return cls(la.identity3(exact), la.zeros_like_kind(exact, 3), 1)

    @classmethod
    def translation_only(cls, a) -> "EuclideanMotion":
        a = la.as_array(a, (3,))
        return cls(la.identity3(a.dtype == object), a, 1)

    def check(self, tol: float = 1e-9) -> bool:
        """True when the rotation is orthogonal with determinant equal to ``parity``."""
        exact = self.rotation.dtype == object
        ortho = la.max_abs(self.rotation @ self.rotation.T - la.identity3(exact))
        det = abs(float(la.det3(self.rotation) - self.parity))
        return ortho <= tol and det <= tol

    def adjoint_matrix(self) -> np.ndarray:
        a = self.rotation
        out = np.zeros((6, 6), dtype=a.dtype)
        out[:3, :3] = a
        out[3:, 3:] = a
        out[3:, :3] = hat(self.translation) @ a
        return out

    def __repr__(self) -> str:
        return (
            f"EuclideanMotion(rotation={self.rotation.tolist()}, "
            f"translation={self.translation.tolist()}, parity={self.parity})"
        )


Scalar = Union[float, Fraction]


def hat(w) -> np.ndarray:
    """Skew matrix of ``w``, so that ``hat(w) @ x == cross(w, x)``."""
    w = la.as_array(w, (3,))
    z = w[0] * 0
    return la.as_array(
        [[z, -w[2], w[1]],
         [w[2], z, -w[0]],
         [-w[1], w[0], z]]
    )


def vee(s, tol: float = SKEW_TOL) -> np.ndarray:
    """Inverse of :func:`hat`; raises :class:`NotSkewError` if ``s`` is not skew."""
    s = la.as_array(s, (3, 3))
    residual = la.max_abs(s + s.T)
    limit = 0 if s.dtype == object else tol
    if residual > limit:
        raise NotSkewError(residual)
    return la.as_array([s[2, 1], s[0, 2], s[1, 0]])


def adjoint_apply(g: EuclideanMotion, s: Twist) -> Twist:
    aw = g.rotation @ s.omega
    return Twist(aw, la.cross(g.translation, aw) + g.rotation @ s.v)


def compose(g: EuclideanMotion, h: EuclideanMotion) -> EuclideanMotion:
    """Group product ``g h`` (apply ``h`` first)."""
    return EuclideanMotion(
        g.rotation @ h.rotation,
        g.rotation @ h.translation + g.translation,
        g.parity * h.parity,
    )


def inverse(g: EuclideanMotion) -> EuclideanMotion:
    rt = g.rotation.T
    return EuclideanMotion(rt, -(rt @ g.translation), g.parity)


def pitch(s: Twist) -> Scalar:
    """omega.v / omega.omega, or :data:`INFINITE` when omega = 0."""
    if s.is_zero():
        raise ZeroTwistError("pitch is undefined for the zero twist")
    ww = la.dot(s.omega, s.omega)
    if ww == 0:
        return INFINITE
    return la.dot(s.omega, s.v) / ww


@dataclass(frozen=True, eq=False)
class ScrewAxis:
    direction: np.ndarray
    point: np.ndarray
    pitch: Scalar

    @property
    def infinite(self) -> bool:
        return self.pitch == INFINITE


def screw_axis(s: Twist) -> ScrewAxis:
    """Axis of the screw motion generated by ``s``.

    For a finite pitch the direction is omega/|omega| and the point nearest the
    origin is q = (v x omega)/(omega.omega), so that omega x q = v - h omega.
    For omega = 0 the direction is v/|v| and the point is the origin by
    convention.

    Note the orientation: translating (omega, 0) by p with :func:`adjoint_apply`
    gives v = p x omega, whose q is -p (component orthogonal to omega).  The
    velocity field x -> omega x x + v is therefore fixed along the line through -q.
    """
    h = pitch(s)
    if h == INFINITE:
        v = s.v.astype(float)
        return ScrewAxis(v / np.linalg.norm(v), np.zeros(3), INFINITE)
    w = s.omega.astype(float)
    q = la.as_array(la.cross(s.v, s.omega)) / la.dot(s.omega, s.omega)
    return ScrewAxis(w / np.linalg.norm(w), q, h)


def lie_bracket(s1: Twist, s2: Twist) -> Twist:
    return Twist(
        la.cross(s1.omega, s2.omega),
        la.cross(s1.omega, s2.v) + la.cross(s1.v, s2.omega),
    )


def ad_matrix(s: Twist) -> np.ndarray:
    """6x6 matrix of ``ad_s = [s, .]`` in (omega, v) coordinates."""
    w, v = hat(s.omega), hat(s.v)
    out = np.zeros((6, 6), dtype=w.dtype)
    out[:3, :3] = w
    out[3:, 3:] = w
    out[3:, :3] = v
    return out


def bracket_from_ad(s1: Twist, s2: Twist) -> Twist:
    """Bracket read off from the commutator of the 6x6 ad matrices.

    ``ad_[s1,s2] = [ad_s1, ad_s2]`` and an ad matrix carries hat(omega) and
    hat(v) in its diagonal and lower-left blocks, so both parts come back via vee.
    """
    a1, a2 = ad_matrix(s1), ad_matrix(s2)
    c = a1 @ a2 - a2 @ a1
    tol = 1e-9 * max(1.0, la.max_abs(c))
    return Twist(vee(c[:3, :3], tol), vee(c[3:, :3], tol))


def phi(m: DualMatrix3, tol: float = 1e-9) -> EuclideanMotion:
    """SO(3, D) -> SE(3): rotation A0, translation vee(A1 A0^t)."""
    exact = m.primal.dtype == object and m.dual.dtype == object
    report = is_dual_orthogonal(m, 0 if exact else tol)
    if not report.ok:
        raise NotDualOrthogonalError(report)
    x = m.dual @ m.primal.T
    # project onto skew part so float round-off does not trip vee
    x = (x - x.T) / 2
    return EuclideanMotion(m.primal, vee(x), 1)


def phi_inverse(g: EuclideanMotion) -> DualMatrix3:
    if g.parity != 1:
        raise ValueError("only proper motions (parity +1) lie in the image of SO(3, D)")
    return DualMatrix3(g.rotation, hat(g.translation) @ g.rotation)


# A fixed reflection used to turn proper rotations into improper ones.
_REFLECTION = -np.eye(3)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def quaternion_to_matrix(q) -> np.ndarray:
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
            [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
            [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
        ]
    )


def random_rotation(seed=None) -> np.ndarray:
    """Haar-uniform rotation from a normalized 4-d Gaussian (unit quaternion)."""
    rng = _rng(seed)
    q = rng.standard_normal(4)
    return quaternion_to_matrix(q / np.linalg.norm(q))


def random_motion(seed=None, parity: int = 1) -> EuclideanMotion:
    """Random rotation (Haar) and translation uniform in [-1, 1]^3.

    ``seed`` may be an int or a ``numpy.random.Generator``; passing a generator
    advances it, so successive calls give independent motions.
    """
    rng = _rng(seed)
    r = random_rotation(rng)
    a = rng.uniform(-1.0, 1.0, 3)
    if parity == -1:
        r = _REFLECTION @ r
    elif parity != 1:
        raise ValueError("parity must be +1 or -1")
    return EuclideanMotion(r, a, parity)


def random_twist(seed=None) -> Twist:
    rng = _rng(seed)
    return Twist(rng.uniform(-1.0, 1.0, 3), rng.uniform(-1.0, 1.0, 3))


def random_twists(seed=None, k: int = 3) -> list[Twist]:
    rng = _rng(seed)
    return [random_twist(rng) for _ in range(k)]
