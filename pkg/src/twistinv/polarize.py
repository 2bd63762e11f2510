"""Dualisation of SO(3) invariants: f(w) -> f(w) + eps * sum_r v_r df/dw_r.

Polynomials in the angular variables ``w{i}_{c}`` are sent to pairs of
polynomials (primal, dual); the dual part introduces the matching linear
variables ``v{i}_{c}``.  All arithmetic is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _linalg as la
from .dual import DualScalar
from .poly import MultiPoly, _TWIST_VAR, v_var, w_var
from .screw import Twist


@dataclass(frozen=True)
class DualPoly:
    primal: MultiPoly
    dual: MultiPoly = field(default_factory=MultiPoly)

    def __add__(self, other: "DualPoly") -> "DualPoly":
        return DualPoly(self.primal + other.primal, self.dual + other.dual)

    def __sub__(self, other: "DualPoly") -> "DualPoly":
        return DualPoly(self.primal - other.primal, self.dual - other.dual)

    def __neg__(self) -> "DualPoly":
        return DualPoly(-self.primal, -self.dual)

    def __mul__(self, other: "DualPoly") -> "DualPoly":
        return dual_product(self, other)

    def scale(self, c) -> "DualPoly":
        return DualPoly(self.primal.scale(c), self.dual.scale(c))

    def evaluate(self, point) -> DualScalar:
        return DualScalar(self.primal.evaluate(point), self.dual.evaluate(point))


def dual_product(p: DualPoly, q: DualPoly) -> DualPoly:
    return DualPoly(p.primal * q.primal, p.primal * q.dual + p.dual * q.primal)


def _partner(name: str) -> str:
    m = _TWIST_VAR.match(name)
    if not m or m.group(1) != "w":
        raise ValueError(f"dualize expects angular variables w<i>_<c>, found {name!r}")
    return v_var(int(m.group(2)), int(m.group(3)))


def dualize(f: MultiPoly) -> DualPoly:
    """The dual mapping: primal f, dual part the directional derivative along v."""
    partners = [_partner(name) for name in f.variables]
    dual = MultiPoly()
    for name, partner in zip(f.variables, partners):
        dual = dual + MultiPoly.var(partner) * f.partial_derivative(name)
    return DualPoly(f, dual)


def omega_vector(i: int) -> list[MultiPoly]:
    return [MultiPoly.var(w_var(i, c)) for c in (1, 2, 3)]


def _dot(a, b) -> MultiPoly:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _bracket(a, b, c) -> MultiPoly:
    return la.det3([[a[r], b[r], c[r]] for r in range(3)])


def so3_generator_labels(k: int) -> list[str]:
    quads = [f"I{i}{j}" for i in range(1, k + 1) for j in range(i, k + 1)]
    cubics = ["I" + "".join(map(str, t)) for t in itertools.combinations(range(1, k + 1), 3)]
    return quads + cubics


def so3_generators(k: int) -> list[MultiPoly]:
    """Dot products I_ij (i <= j) then brackets I_ijk (i < j < k), over the 3k angular variables."""
    if k < 1:
        raise ValueError("k must be at least 1")
    ws = [omega_vector(i) for i in range(1, k + 1)]
    quads = [_dot(ws[i], ws[j]) for i in range(k) for j in range(i, k)]
    cubics = [_bracket(ws[i], ws[j], ws[m]) for i, j, m in itertools.combinations(range(k), 3)]
    return quads + cubics


def twist_point(twists: Sequence[Twist]) -> dict:
    """Variable bindings ``w{i}_{c}``, ``v{i}_{c}`` for a list of twists."""
    point = {}
    for i, s in enumerate(twists, start=1):
        for c in (1, 2, 3):
            point[w_var(i, c)] = s.omega[c - 1]
            point[v_var(i, c)] = s.v[c - 1]
    return point


def random_rational_twists(rng: np.random.Generator, k: int = 3) -> list[Twist]:
    """Twists with coordinates n/7, n uniform in [-9, 9]."""
    nums = rng.integers(-9, 10, size=(k, 6))
    return [Twist([Fraction(int(n), 7) for n in row[:3]], [Fraction(int(n), 7) for n in row[3:]]) for row in nums]


# the primal syzygy written with the Gram entries as placeholders
SYZYGY_COEFFICIENTS = (1, -1, 2, -1, -1)


def _gram_det(I, coefficients=SYZYGY_COEFFICIENTS):
    """det of the symmetric matrix ``I`` (callable I(i, j)) with adjustable term coefficients."""
    c = coefficients
    return (
        I(1, 1) * I(2, 2) * I(3, 3) * c[0]
        + I(1, 1) * I(2, 3) * I(2, 3) * c[1]
        + I(1, 2) * I(1, 3) * I(2, 3) * c[2]
        + I(1, 2) * I(1, 2) * I(3, 3) * c[3]
        + I(1, 3) * I(1, 3) * I(2, 2) * c[4]
    )


@dataclass(frozen=True)
class SyzygyReport:
    primal_residual: MultiPoly
    dual_residual: MultiPoly
    printed_dual_residual: MultiPoly

    @property
    def ok(self) -> bool:
        return (
            self.primal_residual.is_zero()
            and self.dual_residual.is_zero()
            and self.printed_dual_residual.is_zero()
        )

    def summary(self) -> str:
        lines = []
        for name, r in (
            ("primal", self.primal_residual),
            ("dual", self.dual_residual),
            ("dual (expanded form)", self.printed_dual_residual),
        ):
            if r.is_zero():
                lines.append(f"{name} residual: 0")
            else:
                lines.append(f"{name} residual: {len(r)} terms, leading {r.leading_term()}")
        return "\n".join(lines)


def verify_syzygy_symbolic(coefficients=SYZYGY_COEFFICIENTS) -> SyzygyReport:
    """Expand I123^2 - det(I_ij) and its dualisation as exact polynomials.

    ``coefficients`` are the five term coefficients of the Gram determinant
    (default: the true ones).  Perturbing one yields a non-zero residual.

    Three residuals are returned:

    * primal: I123^2 - det(I) in the 9 angular variables;
    * dual: dual part of Delta(I123)^2 - det(Delta(I_ij)), computed entirely
      with :func:`dual_product`, in 18 variables;
    * expanded: 2 I123 I~123 minus the twelve-term expansion in the I, I~
      polynomials (the second syzygy as written out term by term).
    """
    gens = so3_generators(3)
    labels = so3_generator_labels(3)
    prim = dict(zip(labels, gens))
    dual = {lab: dualize(g) for lab, g in prim.items()}

    def key(i, j):
        i, j = min(i, j), max(i, j)
        return f"I{i}{j}"

    primal_residual = prim["I123"] ** 2 - _gram_det(lambda i, j: prim[key(i, j)], coefficients)

    d123 = dual["I123"]
    lhs = dual_product(d123, d123)
    dual_consts = tuple(DualPoly(MultiPoly.const(c)) for c in coefficients)
    rhs = _gram_det(lambda i, j: dual[key(i, j)], dual_consts)
    dual_residual = (lhs - rhs).dual

    def P(i, j):
        return prim[key(i, j)]

    def D(i, j):
        return dual[key(i, j)].dual

    c = coefficients
    expanded = (
        c[0] * (D(1, 1) * P(2, 2) * P(3, 3) + P(1, 1) * D(2, 2) * P(3, 3) + P(1, 1) * P(2, 2) * D(3, 3))
        + c[1] * (D(1, 1) * P(2, 3) ** 2 + 2 * P(1, 1) * P(2, 3) * D(2, 3))
        + c[2] * (D(1, 2) * P(1, 3) * P(2, 3) + P(1, 2) * D(1, 3) * P(2, 3) + P(1, 2) * P(1, 3) * D(2, 3))
        + c[3] * (2 * P(1, 2) * D(1, 2) * P(3, 3) + P(1, 2) ** 2 * D(3, 3))
        + c[4] * (2 * P(1, 3) * D(1, 3) * P(2, 2) + P(1, 3) ** 2 * D(2, 2))
    )
    printed = 2 * prim["I123"] * dual["I123"].dual - expanded
    return SyzygyReport(primal_residual, dual_residual, printed)


@dataclass(frozen=True)
class GradientReport:
    ok: bool
    max_residual: float
    failures: list  # sample indices where grad f x w != 0


def gradient_parallel_check(f: MultiPoly, samples, twist: int = 1, tol: float = 0.0) -> GradientReport:
    """Check that grad f(w) is parallel to w (grad f x w = 0) at each sample.

    ``f`` is a polynomial in the angular variables of one twist; ``samples``
    are 3-vectors.  Exact samples are judged with zero tolerance.
    """
    names = [w_var(twist, c) for c in (1, 2, 3)]
    grad = [f.partial_derivative(n) for n in names]
    worst = 0.0
    failures = []
    for idx, w in enumerate(samples):
        point = dict(zip(names, list(w)))
        g = [gi.evaluate(point) for gi in grad]
        r = la.cross(np.array(g, dtype=object), np.array(list(w), dtype=object))
        res = la.max_abs(r)
        worst = max(worst, res)
        if res > tol:
            failures.append(idx)
    return GradientReport(not failures, worst, failures)
