"""Seeded property suites behind ``twistinv selftest``.

Each suite returns a :class:`SuiteResult`; results depend only on the seed and
trial count.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from . import polarize as pz
from .invariants import close, signature, syzygy_residuals, syzygy_scales
from .normal_form import Branch, normal_form_invariants, normalize_triple, random_branch_triple, signature_preserved
from .reconstruction import (
    decompose_even_odd,
    generator_evaluator,
    verify_even_generation,
    verify_odd_generation,
    verify_thirteen_generators,
)
from .screw import adjoint_apply, phi_inverse, random_motion, random_twists

RTOL = 1e-9


@dataclass
class SuiteResult:
    name: str
    passed: int
    total: int
    worst: float

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{self.name:<15} {status}  {self.passed}/{self.total}  worst residual {self.worst:.3e}"


def _rel(a, b) -> float:
    a, b = float(a), float(b)
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 1e-12 else abs(a - b)


def _rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def suite_invariance(trials: int, seed: int) -> SuiteResult:
    rng = _rng(seed, "invariance")
    passed, worst = 0, 0.0
    for _ in range(trials):
        g = random_motion(rng)
        twists = random_twists(rng)
        a = signature(twists).labeled()
        b = signature([adjoint_apply(g, s) for s in twists]).labeled()
        worst = max(worst, max(_rel(a[k], b[k]) for k in a))
        passed += all(close(a[k], b[k], RTOL) for k in a)
    return SuiteResult("invariance", passed, trials, worst)


def suite_syzygy(trials: int, seed: int) -> SuiteResult:
    rng = _rng(seed, "syzygy")
    report = pz.verify_syzygy_symbolic()
    passed, worst = int(report.ok), 0.0
    for _ in range(trials):
        sig = signature(random_twists(rng))
        r1, r2 = syzygy_residuals(sig)
        s1, s2 = syzygy_scales(sig)
        e = max(abs(r1) / s1, abs(r2) / s2)
        worst = max(worst, e)
        passed += e <= RTOL
    return SuiteResult("syzygy", passed, trials + 1, worst)


def suite_dualize(trials: int, seed: int) -> SuiteResult:
    rng = _rng(seed, "dualize")
    labels = pz.so3_generator_labels(3)
    duals = [pz.dualize(g) for g in pz.so3_generators(3)]
    passed, worst = 0, 0.0
    for _ in range(trials):
        # exact agreement with the hand-coded invariants
        twists = pz.random_rational_twists(rng)
        point = pz.twist_point(twists)
        sig = signature(twists)
        exact_ok = True
        for lab, d in zip(labels, duals):
            idx = tuple(int(ch) for ch in lab[1:])
            val = d.evaluate(point)
            exact_ok &= val.primal == sig.I(*idx) and val.dual == sig.It(*idx)
        # invariance under a random element of SO(3, D)
        m = phi_inverse(random_motion(rng))
        ftw = random_twists(rng)
        moved = [type(s).from_dual(m @ s.to_dual()) for s in ftw]
        p0, p1 = pz.twist_point(ftw), pz.twist_point(moved)
        inv_ok = True
        for d in duals:
            a, b = d.evaluate(p0), d.evaluate(p1)
            e = max(_rel(a.primal, b.primal), _rel(a.dual, b.dual))
            worst = max(worst, e)
            inv_ok &= close(a.primal, b.primal, RTOL) and close(a.dual, b.dual, RTOL)
        passed += exact_ok and inv_ok
    return SuiteResult("dualize", passed, trials, worst)


def suite_normalform(trials: int, seed: int) -> SuiteResult:
    rng = _rng(seed, "normalform")
    passed, total, worst = 0, 0, 0.0
    for branch in Branch:
        for _ in range(trials):
            twists = random_branch_triple(rng, branch)
            nf = normalize_triple(*twists)
            res = nf.pattern_residual()
            worst = max(worst, res)
            ok = nf.branch is branch and res < 1e-10 and signature_preserved(nf, twists)
            if branch is Branch.GENERIC:
                sig = signature(twists).labeled()
                table = normal_form_invariants(nf.alpha, nf.beta)
                ok = ok and all(close(sig[k], table[k], RTOL) for k in table)
            passed += ok
            total += 1
    return SuiteResult("normalform", passed, total, worst)


def suite_reconstruction(trials: int, seed: int) -> SuiteResult:
    reports = [
        verify_even_generation(trials, seed),
        verify_odd_generation(trials, seed + 1),
        verify_thirteen_generators(trials, seed + 2),
    ]
    return SuiteResult(
        "reconstruction",
        sum(r.passed for r in reports),
        sum(r.trials for r in reports),
        max(r.worst for r in reports),
    )


EVEN_LABELS = ("I11", "I12", "I13", "I22", "I23", "I33", "I~11", "I~12", "I~13", "I~22", "I~23", "I~33")
ODD_LABELS = ("I123", "I~123")


def suite_evenodd(trials: int, seed: int) -> SuiteResult:
    rng = _rng(seed, "evenodd")
    parts = {lab: decompose_even_odd(generator_evaluator(lab)) for lab in EVEN_LABELS + ODD_LABELS}
    passed, worst = 0, 0.0
    for _ in range(trials):
        g = random_motion(rng, parity=-1)
        x = random_twists(rng)
        gx = [adjoint_apply(g, s) for s in x]
        ok = True
        for lab, (fe, fo) in parts.items():
            f = generator_evaluator(lab)
            checks = [
                (fe(gx), fe(x)),
                (fo(gx), -fo(x)),
                (fe(x) + fo(x), f(x)),
                (fo(x) if lab in EVEN_LABELS else fe(x), 0.0),
            ]
            for a, b in checks:
                worst = max(worst, abs(float(a) - float(b)) / max(1.0, abs(float(b))))
                ok &= close(a, b, RTOL)
        passed += ok
    return SuiteResult("evenodd", passed, trials, worst)


SUITES = {
    "invariance": suite_invariance,
    "syzygy": suite_syzygy,
    "dualize": suite_dualize,
    "normalform": suite_normalform,
    "reconstruction": suite_reconstruction,
    "evenodd": suite_evenodd,
}


def run(suite: str = "all", trials: int = 100, seed: int = 0) -> list[SuiteResult]:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise KeyError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    return [SUITES[name](trials, seed) for name in names]
