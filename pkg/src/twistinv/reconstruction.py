"""Rational reconstruction of normal-form monomials from the invariants.

On the normal form (see :mod:`twistinv.normal_form`) the 12 quadratic
invariants are polynomials in a1..a6, b1..b6.  Solving them in triangular
order (Theta_1 block from the first twist, then Theta_2, then Theta_3) gives
every quadratic monomial that survives the three sign flips as a rational
function of the invariants, with denominators built from I11,
G = I11 I22 - I12^2 and det(I_ij).  Odd monomials theta1 theta2 theta3 are
then recovered by multiplying by I123.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .invariants import InvariantSignature, dual_gram_det, gram_det, signature
from .normal_form import normalize_triple
from .screw import Twist, random_motion, random_twists, adjoint_apply

THETA1 = ("a1", "a2", "a4", "b1", "b2", "b4")
THETA2 = ("a3", "a5", "b3", "b5")
THETA3 = ("a6", "b6")

PARAM_NAMES = ("a1", "a2", "a3", "a4", "a5", "a6", "b1", "b2", "b3", "b4", "b5", "b6")


def _mono(x: str, y: str) -> tuple:
    return tuple(sorted((x, y), key=PARAM_NAMES.index))


QUADRATIC_MONOMIALS = tuple(
    [_mono(*p) for p in itertools.combinations_with_replacement(THETA3, 2)]
    + [_mono(*p) for p in itertools.combinations_with_replacement(THETA2, 2)]
    + [_mono(*p) for p in itertools.combinations_with_replacement(THETA1, 2)]
)
"""The 34 quadratic monomials invariant under the three coordinate sign flips."""

CUBIC_MONOMIALS = tuple(tuple(t) for t in itertools.product(THETA1, THETA2, THETA3))


class GenericityError(ValueError):
    """Raised when a denominator of the reconstruction formulas vanishes."""

    def __init__(self, name: str, value: float):
        super().__init__(f"reconstruction needs {name} != 0 (got {value:.3g})")
        self.denominator = name
        self.value = value


@dataclass(frozen=True)
class MonomialTable:
    quadratic: dict  # (x, y) -> value, keys from QUADRATIC_MONOMIALS
    cubic: dict = field(default_factory=dict)  # (t1, t2, t3) -> value; empty when I123 = 0

    def __getitem__(self, key):
        key = tuple(key)
        if len(key) == 2:
            return self.quadratic[_mono(*key)]
        return self.cubic[key]

    def evaluate(self, factors: Sequence[tuple]):
        """Product of table entries (quadratic pairs or cubic triples)."""
        out = 1.0
        for f in factors:
            out *= self[f]
        return out


def _scale(sig: InvariantSignature) -> float:
    vals = list(np.abs(sig.quad_primal).ravel()) + list(np.abs(sig.quad_dual).ravel())
    return max(1.0, float(max(vals)))


def _require(name: str, value, threshold: float):
    if abs(value) <= threshold:
        raise GenericityError(name, float(value))


def monomials_from_invariants(sig: InvariantSignature, use_cubic: bool = True) -> MonomialTable:
    """Evaluate every quadratic normal-form monomial from the invariants.

    Only the 12 quadratic invariants are used for the quadratic table.  The
    cubic table additionally uses I123 and is filled when ``use_cubic`` is set
    and I123 != 0.  I~123 is never read.
    """
    if sig.k != 3:
        raise ValueError("monomial reconstruction is for triples")
    I = lambda i, j: float(sig.I(i, j))  # noqa: E731
    J = lambda i, j: float(sig.It(i, j))  # noqa: E731
    scale = _scale(sig)

    I11 = I(1, 1)
    _require("I11", I11, 1e-12 * scale)
    G = I11 * I(2, 2) - I(1, 2) ** 2
    _require("I11*I22 - I12^2", G, 1e-12 * scale ** 2)

    q = {}
    # Theta_1 block: everything over a1^2 = I11
    q["a1", "a1"] = I11
    q["a1", "a2"] = I(1, 2)
    q["a1", "a4"] = I(1, 3)
    q["a1", "b1"] = J(1, 1) / 2
    q["a2", "b1"] = I(1, 2) * J(1, 1) / (2 * I11)
    q["a4", "b1"] = I(1, 3) * J(1, 1) / (2 * I11)
    q["a1", "b2"] = J(1, 2) - q["a2", "b1"]
    q["a1", "b4"] = J(1, 3) - q["a4", "b1"]
    a1x = {"a1": q["a1", "a1"], "a2": q["a1", "a2"], "a4": q["a1", "a4"],
           "b1": q["a1", "b1"], "b2": q["a1", "b2"], "b4": q["a1", "b4"]}
    for x, y in itertools.combinations_with_replacement(THETA1, 2):
        key = _mono(x, y)
        if key not in q:
            # (a1 x)(a1 y) / a1^2
            q[key] = a1x[x] * a1x[y] / I11

    # Theta_2 block: over a3^2 = G / I11
    a3sq = G / I11
    q["a3", "a3"] = a3sq
    q["a3", "a5"] = I(2, 3) - q["a2", "a4"]
    q["a3", "b3"] = (J(2, 2) - 2 * q["a2", "b2"]) / 2
    q["a5", "b3"] = q["a3", "a5"] * q["a3", "b3"] / a3sq
    q["a3", "b5"] = J(2, 3) - q["a2", "b4"] - q[_mono("a4", "b2")] - q["a5", "b3"]
    a3x = {"a3": a3sq, "a5": q["a3", "a5"], "b3": q["a3", "b3"], "b5": q["a3", "b5"]}
    for x, y in itertools.combinations_with_replacement(THETA2, 2):
        key = _mono(x, y)
        if key not in q:
            q[key] = a3x[x] * a3x[y] / a3sq

    # Theta_3 block: a6^2 = det(I)/G and the differentiated quotient for a6 b6,
    # with 2 I123 I~123 replaced by the dual Gram determinant
    D1 = gram_det(sig)
    D2 = dual_gram_det(sig)
    Gd = J(1, 1) * I(2, 2) + I11 * J(2, 2) - 2 * I(1, 2) * J(1, 2)
    a6sq = float(D1) / G
    q["a6", "a6"] = a6sq
    q["a6", "b6"] = (float(D2) * G - float(D1) * Gd) / (2 * G * G)
    _require("det(I_ij) = I123^2", D1, 1e-12 * scale ** 3)
    q["b6", "b6"] = q["a6", "b6"] ** 2 / a6sq

    quadratic = {_mono(*k): v for k, v in q.items()}
    assert set(quadratic) == set(QUADRATIC_MONOMIALS)

    cubic = {}
    I123 = float(sig.I(1, 2, 3))
    if use_cubic and abs(I123) > 1e-12 * scale ** 1.5:
        a6x = {"a6": a6sq, "b6": quadratic["a6", "b6"]}
        denom = float(D1)  # a1^2 a3^2 a6^2
        for t1, t2, t3 in CUBIC_MONOMIALS:
            cubic[t1, t2, t3] = a1x[t1] * a3x[t2] * a6x[t3] * I123 / denom
    return MonomialTable(quadratic, cubic)


def _param_values(alpha, beta) -> dict:
    return dict(zip(PARAM_NAMES, list(alpha) + list(beta)))


def monomials_from_params(alpha, beta) -> MonomialTable:
    """Direct evaluation of the same monomials on normal-form parameters (the oracle)."""
    p = _param_values(alpha, beta)
    quad = {m: p[m[0]] * p[m[1]] for m in QUADRATIC_MONOMIALS}
    cubic = {m: p[m[0]] * p[m[1]] * p[m[2]] for m in CUBIC_MONOMIALS}
    return MonomialTable(quad, cubic)


@dataclass
class GenerationReport:
    trials: int
    passed: int = 0
    worst: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.trials and not self.failures

    def record(self, trial: int, direct: float, rebuilt: float, rtol: float, magnitude: float = 0.0):
        """Compare relative to max(|direct|, |rebuilt|, magnitude).

        ``magnitude`` is the sum of absolute term values when the compared
        quantity is a sum, so accidental cancellation does not count as error.
        """
        scale = max(abs(direct), abs(rebuilt), magnitude)
        err = abs(direct - rebuilt) / scale if scale > 0 else 0.0
        self.worst = max(self.worst, err)
        if err <= rtol:
            self.passed += 1
        else:
            self.failures.append((trial, direct, rebuilt))


def _random_generic_triple(rng: np.random.Generator) -> list[Twist]:
    while True:
        twists = random_twists(rng)
        sig = signature(twists)
        G = sig.I(1, 1) * sig.I(2, 2) - sig.I(1, 2) ** 2
        if sig.I(1, 1) > 1e-2 and G > 1e-2 and abs(sig.I(1, 2, 3)) > 1e-2:
            return twists


def random_even_polynomial(rng: np.random.Generator, n_terms: int = 3, max_factors: int = 3) -> list:
    """Random sum of products of quadratic monomials, as ``[(coef, [monomial, ...]), ...]``."""
    poly = []
    for _ in range(n_terms):
        n = int(rng.integers(0, max_factors + 1))
        factors = [QUADRATIC_MONOMIALS[int(i)] for i in rng.integers(0, len(QUADRATIC_MONOMIALS), n)]
        poly.append((float(rng.uniform(-1, 1)), factors))
    return poly


def evaluate_polynomial(poly, table: MonomialTable) -> tuple[float, float]:
    """Value of the polynomial and the sum of its absolute term values."""
    terms = [c * table.evaluate(factors) for c, factors in poly]
    return sum(terms), sum(abs(t) for t in terms)


def verify_even_generation(trials: int = 100, seed: int = 0, rtol: float = 1e-8) -> GenerationReport:
    """Random even polynomials: normal-form evaluation vs reconstruction from the 12 quadratics."""
    rng = np.random.default_rng(seed)
    report = GenerationReport(trials)
    for trial in range(trials):
        twists = _random_generic_triple(rng)
        # move to a random frame so the reconstruction never sees normal-form data
        g = random_motion(rng)
        twists = [adjoint_apply(g, s) for s in twists]
        nf = normalize_triple(*twists)
        poly = random_even_polynomial(rng)
        direct, magnitude = evaluate_polynomial(poly, monomials_from_params(nf.alpha, nf.beta))
        rebuilt, _ = evaluate_polynomial(poly, monomials_from_invariants(signature(twists), use_cubic=False))
        report.record(trial, direct, rebuilt, rtol, magnitude)
    return report


def verify_odd_generation(trials: int = 100, seed: int = 0, rtol: float = 1e-8) -> GenerationReport:
    """Random odd monomials theta1 theta2 theta3 M' rebuilt from the 12 quadratics and I123."""
    rng = np.random.default_rng(seed)
    report = GenerationReport(trials)
    for trial in range(trials):
        twists = _random_generic_triple(rng)
        g = random_motion(rng)
        twists = [adjoint_apply(g, s) for s in twists]
        nf = normalize_triple(*twists)
        theta = CUBIC_MONOMIALS[int(rng.integers(len(CUBIC_MONOMIALS)))]
        n = int(rng.integers(0, 3))
        even = [QUADRATIC_MONOMIALS[int(i)] for i in rng.integers(0, len(QUADRATIC_MONOMIALS), n)]
        factors = [theta] + even
        direct = monomials_from_params(nf.alpha, nf.beta).evaluate(factors)
        rebuilt = monomials_from_invariants(signature(twists)).evaluate(factors)
        report.record(trial, direct, rebuilt, rtol)
    return report


def tilde_i123_from_thirteen(sig: InvariantSignature) -> float:
    """I~123 from the 12 quadratics and I123 via 2 I123 I~123 = dual Gram determinant."""
    I123 = float(sig.I(1, 2, 3))
    if I123 == 0:
        raise GenericityError("I123", 0.0)
    return float(dual_gram_det(sig)) / (2 * I123)


def random_generator_polynomial(rng: np.random.Generator, n_terms: int = 4, max_factors: int = 3) -> list:
    """Random polynomial in the 14 generators as ``[(coef, [label, ...]), ...]``."""
    labels = ["I11", "I12", "I13", "I22", "I23", "I33",
              "I~11", "I~12", "I~13", "I~22", "I~23", "I~33", "I123", "I~123"]
    poly = []
    for t in range(n_terms):
        n = int(rng.integers(1, max_factors + 1))
        factors = [labels[int(i)] for i in rng.integers(0, len(labels), n)]
        if t == 0 and "I~123" not in factors:
            factors[0] = "I~123"  # make sure the eliminated generator is exercised
        poly.append((float(rng.uniform(-1, 1)), factors))
    return poly


def verify_thirteen_generators(trials: int = 100, seed: int = 0, rtol: float = 1e-8) -> GenerationReport:
    """Polynomials in all 14 generators vs the same with I~123 eliminated."""
    rng = np.random.default_rng(seed)
    report = GenerationReport(trials)
    for trial in range(trials):
        twists = _random_generic_triple(rng)
        sig = signature(twists)
        full = {k: float(v) for k, v in sig.labeled().items()}
        reduced = dict(full)
        reduced["I~123"] = tilde_i123_from_thirteen(sig)
        poly = random_generator_polynomial(rng)

        def ev(vals):
            terms = [c * float(np.prod([vals[f] for f in fs])) for c, fs in poly]
            return sum(terms), sum(abs(t) for t in terms)

        direct, magnitude = ev(full)
        report.record(trial, direct, ev(reduced)[0], rtol, magnitude)
    return report


Evaluator = Callable[[Sequence[Twist]], float]


def decompose_even_odd(f: Evaluator) -> tuple[Evaluator, Evaluator]:
    """Split an SE(3)-invariant ``f`` into even and odd parts.

    ``f'`` is ``f`` after the improper element (-I, 0), i.e. every coordinate
    negated; then f_E = (f + f')/2 and f_O = (f - f')/2.
    """

    def f_prime(twists):
        return f([-s for s in twists])

    def f_even(twists):
        return (f(twists) + f_prime(twists)) / 2

    def f_odd(twists):
        return (f(twists) - f_prime(twists)) / 2

    return f_even, f_odd


def improper_variant(f: Evaluator, motion) -> Evaluator:
    """f'_(R,T): ``f`` precomposed with an improper motion."""
    if motion.parity != -1:
        raise ValueError("expected an improper motion (parity -1)")

    def f_prime(twists):
        return f([adjoint_apply(motion, s) for s in twists])

    return f_prime


def generator_evaluator(label: str) -> Evaluator:
    """Evaluator of one of the 14 labelled generators on a triple."""

    def f(twists):
        return signature(twists).labeled()[label]

    f.__name__ = f"invariant_{label}"
    return f
