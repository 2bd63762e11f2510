"""Numeric k-fold invariants of the adjoint action of SE(3).

For twists ``s_i = (w_i, v_i)`` the family is

    I_ij  = w_i . w_j                    I~_ij  = w_i . v_j + v_i . w_j
    I_ijk = [w_i w_j w_k]                I~_ijk = [w_i w_j v_k] + [w_j w_k v_i] + [w_k w_i v_j]

i.e. the primal and dual parts of the dualised SO(3) dot products and brackets.
Everything here evaluates exactly when the twists carry ``Fraction`` entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _linalg as la
from .screw import Twist

DEFAULT_RTOL = 1e-9
ABS_FLOOR = 1e-12


def killing_form(s: Twist):
    return la.dot(s.omega, s.omega)


def klein_form(s: Twist):
    return la.dot(s.omega, s.v)


@dataclass(frozen=True, eq=False)
class InvariantSignature:
    """Evaluated invariants of ``k`` twists.

    ``quad_primal``/``quad_dual`` are symmetric k x k arrays (0-based); the cubic
    tables map sorted 0-based index triples ``(i, j, k)`` to values.
    """

    k: int
    quad_primal: np.ndarray
    quad_dual: np.ndarray
    cubic_primal: dict
    cubic_dual: dict

    def labeled(self) -> dict:
        """Flat ``{label: value}`` view with 1-based labels: I11, I~11, ..., I123, I~123."""
        out = {}
        for i, j in _pairs(self.k):
            out[f"I{i + 1}{j + 1}"] = self.quad_primal[i, j]
        for i, j in _pairs(self.k):
            out[f"I~{i + 1}{j + 1}"] = self.quad_dual[i, j]
        for t in self.cubic_primal:
            out["I" + "".join(str(x + 1) for x in t)] = self.cubic_primal[t]
        for t in self.cubic_dual:
            out["I~" + "".join(str(x + 1) for x in t)] = self.cubic_dual[t]
        return out

    def values(self) -> np.ndarray:
        return np.array([float(x) for x in self.labeled().values()])

    # Convenience accessors for k = 3, 1-based like the usual notation.
    def I(self, *idx):
        return self._get(idx, self.quad_primal, self.cubic_primal)

    def It(self, *idx):
        return self._get(idx, self.quad_dual, self.cubic_dual)

    def _get(self, idx, quad, cubic):
        idx = tuple(i - 1 for i in idx)
        if len(idx) == 2:
            return quad[idx]
        if len(idx) == 3:
            return cubic[idx]
        raise IndexError("expected two or three indices")


def _pairs(k: int):
    return [(i, j) for i in range(k) for j in range(i, k)]


def signature(twists: Sequence[Twist]) -> InvariantSignature:
    twists = list(twists)
    k = len(twists)
    if k == 0:
        raise ValueError("signature needs at least one twist")
    exact = all(s.exact for s in twists)
    ws = [s.omega for s in twists]
    vs = [s.v for s in twists]
    qp = la.zeros_like_kind(exact, (k, k))
    qd = la.zeros_like_kind(exact, (k, k))
    for i, j in _pairs(k):
        qp[i, j] = qp[j, i] = la.dot(ws[i], ws[j])
        qd[i, j] = qd[j, i] = la.dot(ws[i], vs[j]) + la.dot(vs[i], ws[j])
    cp, cd = {}, {}
    for i, j, m in itertools.combinations(range(k), 3):
        cp[(i, j, m)] = la.det_columns(ws[i], ws[j], ws[m])
        cd[(i, j, m)] = (
            la.det_columns(ws[i], ws[j], vs[m])
            + la.det_columns(ws[j], ws[m], vs[i])
            + la.det_columns(ws[m], ws[i], vs[j])
        )
    qp.setflags(write=False)
    qd.setflags(write=False)
    return InvariantSignature(k, qp, qd, cp, cd)


def gram_det(sig: InvariantSignature):
    """det(I_ij) expanded as I11 I22 I33 - I11 I23^2 + 2 I12 I13 I23 - I12^2 I33 - I13^2 I22."""
    I = sig.I
    return (
        I(1, 1) * I(2, 2) * I(3, 3)
        - I(1, 1) * I(2, 3) ** 2
        + 2 * I(1, 2) * I(1, 3) * I(2, 3)
        - I(1, 2) ** 2 * I(3, 3)
        - I(1, 3) ** 2 * I(2, 2)
    )


def dual_gram_det(sig: InvariantSignature):
    """Dual part of det(I_ij + eps I~_ij): the twelve-term right side of the second syzygy."""
    I, J = sig.I, sig.It
    return (
        J(1, 1) * I(2, 2) * I(3, 3)
        + I(1, 1) * J(2, 2) * I(3, 3)
        + I(1, 1) * I(2, 2) * J(3, 3)
        - J(1, 1) * I(2, 3) ** 2
        - 2 * I(1, 1) * I(2, 3) * J(2, 3)
        + 2 * J(1, 2) * I(1, 3) * I(2, 3)
        + 2 * I(1, 2) * J(1, 3) * I(2, 3)
        + 2 * I(1, 2) * I(1, 3) * J(2, 3)
        - 2 * I(1, 2) * J(1, 2) * I(3, 3)
        - I(1, 2) ** 2 * J(3, 3)
        - 2 * I(1, 3) * J(1, 3) * I(2, 2)
        - I(1, 3) ** 2 * J(2, 2)
    )


def syzygy_residuals(sig: InvariantSignature):
    """(I123^2 - det(I), 2 I123 I~123 - dual part of det(I + eps I~))."""
    if sig.k != 3:
        raise ValueError(f"syzygies are defined for k = 3, got k = {sig.k}")
    r1 = sig.I(1, 2, 3) ** 2 - gram_det(sig)
    r2 = 2 * sig.I(1, 2, 3) * sig.It(1, 2, 3) - dual_gram_det(sig)
    return r1, r2


def syzygy_scales(sig: InvariantSignature):
    """Magnitudes against which the two residuals are judged relatively."""
    a = max(la.max_abs(sig.quad_primal), 1.0)
    b = max(la.max_abs(sig.quad_dual), la.max_abs(list(sig.cubic_dual.values())), 1.0)
    return a ** 3, a * a * b


def close(a, b, rtol: float = DEFAULT_RTOL, atol: float = ABS_FLOOR) -> bool:
    a, b = float(a), float(b)
    return abs(a - b) <= max(atol, rtol * max(abs(a), abs(b)))


@dataclass(frozen=True)
class EquivalenceReport:
    match: bool
    deltas: dict
    caveat: str = (
        "matching invariants is a necessary condition for adjoint equivalence; "
        "sufficiency is not established"
    )

    def __bool__(self) -> bool:
        return self.match


def equivalent(a: Sequence[Twist], b: Sequence[Twist], tol: float = DEFAULT_RTOL) -> EquivalenceReport:
    """Compare the 14 invariants of two triples entry by entry."""
    if len(a) != 3 or len(b) != 3:
        raise ValueError("equivalence is checked on triples of twists")
    la_, lb = signature(a).labeled(), signature(b).labeled()
    deltas = {key: float(lb[key]) - float(la_[key]) for key in la_}
    match = all(close(la_[key], lb[key], tol) for key in la_)
    return EquivalenceReport(match, deltas)


def quadratic_invariants(x: np.ndarray) -> np.ndarray:
    """The 12 quadratic invariants of a triple given as an 18-vector.

    Coordinates are ordered (w1, v1, w2, v2, w3, v3).  Output order is
    I11, I12, I13, I22, I23, I33 then the same for I~.
    """
    x = np.asarray(x, dtype=float).reshape(3, 2, 3)
    w, v = x[:, 0], x[:, 1]
    pairs = _pairs(3)
    prim = [w[i] @ w[j] for i, j in pairs]
    dual = [w[i] @ v[j] + v[i] @ w[j] for i, j in pairs]
    return np.array(prim + dual)


def all_invariants(x: np.ndarray) -> np.ndarray:
    """The 14 invariants (12 quadratics, I123, I~123) of an 18-vector triple."""
    x = np.asarray(x, dtype=float).reshape(3, 2, 3)
    twists = [Twist(x[i, 0], x[i, 1]) for i in range(3)]
    return signature(twists).values()


def triple_to_vector(twists: Sequence[Twist]) -> np.ndarray:
    return np.concatenate([np.concatenate([s.omega, s.v]) for s in twists]).astype(float)


def quadratic_jacobian(x: np.ndarray) -> np.ndarray:
    """Analytic 12 x 18 Jacobian of :func:`quadratic_invariants`."""
    x = np.asarray(x, dtype=float).reshape(3, 2, 3)
    w, v = x[:, 0], x[:, 1]
    jac = np.zeros((12, 18))

    def col(i, part):
        start = 6 * i + 3 * part
        return slice(start, start + 3)

    for r, (i, j) in enumerate(_pairs(3)):
        # d(w_i . w_j)
        jac[r, col(i, 0)] += w[j]
        jac[r, col(j, 0)] += w[i]
        # d(w_i . v_j + v_i . w_j)
        jac[6 + r, col(i, 0)] += v[j]
        jac[6 + r, col(j, 1)] += w[i]
        jac[6 + r, col(i, 1)] += w[j]
        jac[6 + r, col(j, 0)] += v[i]
    return jac


def finite_difference_jacobian(f, x: np.ndarray, step: float = 1e-6) -> np.ndarray:
    """Forward differences of ``f`` at ``x``."""
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(f(x))
    jac = np.empty((f0.size, x.size))
    for c in range(x.size):
        xp = x.copy()
        xp[c] += step
        jac[:, c] = (np.asarray(f(xp)) - f0) / step
    return jac


def normalized_singular_values(jac: np.ndarray) -> np.ndarray:
    """Singular values after scaling every row to unit norm."""
    norms = np.linalg.norm(jac, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return np.linalg.svd(jac / norms, compute_uv=False)


def numerical_rank(jac: np.ndarray, threshold: float = 1e-6) -> int:
    return int(np.sum(normalized_singular_values(jac) > threshold))
