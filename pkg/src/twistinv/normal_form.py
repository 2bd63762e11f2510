"""Reduction of a twist triple to the sparse normal form

    s1' = (a1, 0, 0,  b1, 0, 0)
    s2' = (a2, a3, 0, b2, b3, 0)
    s3' = (a4, a5, a6, b4, b5, b6)

by an explicit proper motion.  Three branches are handled: w1, w2 independent
(GENERIC), w1 = 0 (OMEGA1_ZERO) and w2 parallel to w1 (DEPENDENT_OMEGA12).

Sign conventions fixing the rotation: in the GENERIC branch a1 > 0 and a3 > 0.
In the degenerate branches the first nonzero in-plane reference component is
made positive (b1 > 0 when w1 = 0; a3 >= 0, then b3 >= 0).  a6 carries the
orientation of the triple and is never normalised.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .invariants import close, signature
from .screw import EuclideanMotion, Twist, adjoint_apply

INDEPENDENCE_TOL = 1e-10
PATTERN_TOL = 1e-10


class Branch(enum.Enum):
    GENERIC = "generic"
    OMEGA1_ZERO = "omega1_zero"
    DEPENDENT_OMEGA12 = "dependent_omega12"


class NormalFormError(ValueError):
    pass


# positions of the free entries in the stacked (3, 6) array of normal-form twists
ALPHA_SLOTS = ((0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2))
BETA_SLOTS = ((0, 3), (1, 3), (1, 4), (2, 3), (2, 4), (2, 5))
ZERO_SLOTS = ((0, 1), (0, 2), (0, 4), (0, 5), (1, 2), (1, 5))


@dataclass(frozen=True, eq=False)
class NormalFormResult:
    motion: EuclideanMotion
    alpha: np.ndarray  # a1..a6
    beta: np.ndarray  # b1..b6
    branch: Branch
    transformed: tuple

    @property
    def params(self) -> np.ndarray:
        return np.concatenate([self.alpha, self.beta])

    def pattern_residual(self) -> float:
        rows = np.array([t.as_vector() for t in self.transformed], dtype=float)
        return max(abs(rows[i, j]) for i, j in ZERO_SLOTS)


def _unit(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x)


def _orthogonal_part(x: np.ndarray, e: np.ndarray) -> np.ndarray:
    return x - (x @ e) * e


def _default_complement(e1: np.ndarray) -> np.ndarray:
    # standard basis vector least aligned with e1, then Gram-Schmidt
    basis = np.eye(3)[int(np.argmin(np.abs(e1)))]
    return _unit(_orthogonal_part(basis, e1))


def _frame(e1: np.ndarray, candidates: Sequence[np.ndarray], scale: float) -> np.ndarray:
    """Rotation with rows (e1, e2, e1 x e2); e2 from the first candidate not parallel to e1."""
    e2 = None
    for c in candidates:
        perp = _orthogonal_part(c, e1)
        if np.linalg.norm(perp) > INDEPENDENCE_TOL * max(np.linalg.norm(c), scale):
            e2 = _unit(perp)
            break
    if e2 is None:
        e2 = _default_complement(e1)
    return np.vstack([e1, e2, np.cross(e1, e2)])


def classify(s1: Twist, s2: Twist, zero_tol: float | None = None) -> Branch:
    w1 = s1.omega.astype(float)
    w2 = s2.omega.astype(float)
    n1, n2 = np.linalg.norm(w1), np.linalg.norm(w2)
    if zero_tol is None:
        zero_tol = 1e-12 * max(1.0, n1, n2, np.linalg.norm(s1.v.astype(float)))
    if n1 <= zero_tol:
        return Branch.OMEGA1_ZERO
    if np.linalg.norm(np.cross(w1, w2)) > INDEPENDENCE_TOL * n1 * n2:
        return Branch.GENERIC
    return Branch.DEPENDENT_OMEGA12


def normalize_triple(s1: Twist, s2: Twist, s3: Twist) -> NormalFormResult:
    twists = [s1, s2, s3]
    if all(s.is_zero() for s in twists):
        raise NormalFormError("all three twists are zero")
    if s1.is_zero():
        raise NormalFormError("the first twist is zero")
    ws = [s.omega.astype(float) for s in twists]
    vs = [s.v.astype(float) for s in twists]
    scale = max(1.0, max(np.abs(np.concatenate(ws + vs))))
    branch = classify(s1, s2)

    if branch is Branch.GENERIC:
        rot = _frame(_unit(ws[0]), [ws[1]], scale)
        rv1, rv2 = rot @ vs[0], rot @ vs[1]
        a1 = rot[0] @ ws[0]
        a2, a3 = rot[0] @ ws[1], rot[1] @ ws[1]
        # hat(t) x = t x x, so v1' = (v11, v12 + t3 a1, v13 - t2 a1)
        t2 = rv1[2] / a1
        t3 = -rv1[1] / a1
        t1 = (t2 * a2 - rv2[2]) / a3
        t = np.array([t1, t2, t3])
    elif branch is Branch.DEPENDENT_OMEGA12:
        e1 = _unit(ws[0])
        lam = (ws[1] @ ws[0]) / (ws[0] @ ws[0])
        # after the translation below, the out-of-plane part of v2' is the
        # third component of R (v2 - lam v1); choose R to kill it
        rot = _frame(e1, [vs[1] - lam * vs[0]], scale)
        rv1 = rot @ vs[0]
        a1 = rot[0] @ ws[0]
        t = np.array([0.0, rv1[2] / a1, -rv1[1] / a1])
    else:
        e1 = _unit(vs[0])
        rot = _frame(e1, [ws[1], vs[1]], scale)
        rw2, rv2 = rot @ ws[1], rot @ vs[1]
        t = np.zeros(3)
        if abs(rw2[1]) > INDEPENDENCE_TOL * max(np.linalg.norm(rw2), scale):
            t[0] = -rv2[2] / rw2[1]

    motion = EuclideanMotion(rot, t, 1)
    out = tuple(adjoint_apply(motion, s) for s in twists)
    rows = np.array([s.as_vector() for s in out], dtype=float)
    alpha = np.array([rows[i, j] for i, j in ALPHA_SLOTS])
    beta = np.array([rows[i, j] for i, j in BETA_SLOTS])
    return NormalFormResult(motion, alpha, beta, branch, out)


def params_to_twists(alpha, beta, branch: Branch = Branch.GENERIC) -> tuple:
    """Build the patterned triple from (a1..a6, b1..b6), enforcing the branch's sign convention."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if alpha.shape != (6,) or beta.shape != (6,):
        raise ValueError("alpha and beta must each have 6 entries")
    a1, a3 = alpha[0], alpha[2]
    if branch is not Branch.GENERIC:
        # degenerate branches: the structural zero is checked to PATTERN_TOL
        if branch is Branch.OMEGA1_ZERO and abs(a1) <= PATTERN_TOL:
            a1 = 0.0
        if branch is Branch.DEPENDENT_OMEGA12 and abs(a3) <= PATTERN_TOL:
            a3 = 0.0
    if branch is Branch.GENERIC:
        if not (a1 > 0 and a3 > 0):
            raise NormalFormError("GENERIC normal form requires a1 > 0 and a3 > 0")
    elif branch is Branch.DEPENDENT_OMEGA12:
        if not (a1 > 0 and a3 == 0 and beta[2] >= 0):
            raise NormalFormError("DEPENDENT_OMEGA12 normal form requires a1 > 0, a3 = 0, b3 >= 0")
    else:
        if not (a1 == 0 and beta[0] > 0 and a3 >= 0 and (a3 > 0 or beta[2] >= 0)):
            raise NormalFormError("OMEGA1_ZERO normal form requires a1 = 0, b1 > 0, a3 >= 0 and b3 >= 0 when a3 = 0")
    rows = np.zeros((3, 6))
    for (i, j), x in zip(ALPHA_SLOTS, alpha):
        rows[i, j] = x
    for (i, j), x in zip(BETA_SLOTS, beta):
        rows[i, j] = x
    return tuple(Twist.from_vector(r) for r in rows)


def signature_preserved(result: NormalFormResult, twists: Sequence[Twist], rtol: float = 1e-9) -> bool:
    before = signature(twists).labeled()
    after = signature(result.transformed).labeled()
    return all(close(before[k], after[k], rtol) for k in before)


def normal_form_invariants(alpha, beta) -> dict:
    """The 14 invariants evaluated symbolically on normal-form parameters."""
    a1, a2, a3, a4, a5, a6 = alpha
    b1, b2, b3, b4, b5, b6 = beta
    return {
        "I11": a1 * a1,
        "I12": a1 * a2,
        "I13": a1 * a4,
        "I22": a2 * a2 + a3 * a3,
        "I23": a2 * a4 + a3 * a5,
        "I33": a4 * a4 + a5 * a5 + a6 * a6,
        "I~11": 2 * a1 * b1,
        "I~12": a1 * b2 + b1 * a2,
        "I~13": a1 * b4 + b1 * a4,
        "I~22": 2 * a2 * b2 + 2 * a3 * b3,
        "I~23": a2 * b4 + a3 * b5 + a4 * b2 + a5 * b3,
        "I~33": 2 * a4 * b4 + 2 * a5 * b5 + 2 * a6 * b6,
        "I123": a1 * a3 * a6,
        "I~123": b1 * a3 * a6 + a1 * b3 * a6 + a1 * a3 * b6,
    }


def random_branch_triple(rng: np.random.Generator, branch: Branch) -> list[Twist]:
    """Random triple landing in ``branch`` (degenerate branches built exactly)."""
    w = rng.uniform(-1, 1, (3, 3))
    v = rng.uniform(-1, 1, (3, 3))
    if branch is Branch.OMEGA1_ZERO:
        w[0] = 0.0
    elif branch is Branch.DEPENDENT_OMEGA12:
        w[1] = rng.uniform(-2, 2) * w[0]
    return [Twist(w[i], v[i]) for i in range(3)]
