"""Acceptance criteria 1-9, one test each."""

import time
from fractions import Fraction

import numpy as np

from twistinv.invariants import (
    close,
    finite_difference_jacobian,
    normalized_singular_values,
    quadratic_invariants,
    quadratic_jacobian,
    signature,
    syzygy_residuals,
    triple_to_vector,
)
from twistinv.normal_form import Branch, normal_form_invariants, normalize_triple, random_branch_triple, signature_preserved
from twistinv.poly import MultiPoly
from twistinv.polarize import (
    dual_product,
    dualize,
    random_rational_twists,
    so3_generator_labels,
    so3_generators,
    twist_point,
    verify_syzygy_symbolic,
)
from twistinv.reconstruction import (
    decompose_even_odd,
    generator_evaluator,
    verify_even_generation,
    verify_odd_generation,
    verify_thirteen_generators,
)
from twistinv.screw import Twist, adjoint_apply, phi_inverse, random_motion, random_twists

from test_invariants import WORKED, brute_force

LABELS = list(WORKED)


def rel_err(a, b):
    a, b = float(a), float(b)
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 1e-12 else abs(a - b)


def test_criterion_1_adjoint_invariance(report_criterion):
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    failures, worst = 0, 0.0
    for _ in range(1000):
        g = random_motion(rng)
        twists = random_twists(rng)
        a = signature(twists).labeled()
        b = signature([adjoint_apply(g, s) for s in twists]).labeled()
        worst = max(worst, max(rel_err(a[k], b[k]) for k in a))
        failures += not all(close(a[k], b[k], 1e-9) for k in a)
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 5.0
    report_criterion(1, ok, f"1000 pairs, {failures} failures, worst rel {worst:.2e}, {elapsed:.2f} s")
    assert ok


def test_criterion_2_symbolic_syzygies(report_criterion):
    start = time.perf_counter()
    report = verify_syzygy_symbolic()
    elapsed = time.perf_counter() - start
    ok = report.primal_residual.is_zero() and report.dual_residual.is_zero() and elapsed < 60
    report_criterion(2, ok, f"primal and dual residuals zero polynomials: {report.ok}, {elapsed:.2f} s")
    assert ok


def test_criterion_3_dual_invariance(report_criterion):
    rng = np.random.default_rng(3)
    labels = so3_generator_labels(3)
    duals = [dualize(g) for g in so3_generators(3)]
    assert len(duals) == 7

    worst, inv_fail = 0.0, 0
    for _ in range(200):
        m = phi_inverse(random_motion(rng))
        twists = random_twists(rng)
        moved = [Twist.from_dual(m @ s.to_dual()) for s in twists]
        p0, p1 = twist_point(twists), twist_point(moved)
        for d in duals:
            a, b = d.evaluate(p0), d.evaluate(p1)
            worst = max(worst, rel_err(a.primal, b.primal), rel_err(a.dual, b.dual))
            inv_fail += not (close(a.primal, b.primal, 1e-9) and close(a.dual, b.dual, 1e-9))

    exact_fail = 0
    for _ in range(50):
        twists = random_rational_twists(rng)
        point = twist_point(twists)
        sig = signature(twists)
        for lab, d in zip(labels, duals):
            idx = tuple(int(ch) for ch in lab[1:])
            value = d.evaluate(point)
            exact_fail += value.primal != sig.I(*idx) or value.dual != sig.It(*idx)

    ok = inv_fail == 0 and exact_fail == 0
    report_criterion(
        3, ok, f"7 generators x 200 SO(3,D) samples, worst rel {worst:.2e}; 50 exact points, {exact_fail} discrepancies"
    )
    assert ok


def test_criterion_4_homomorphism(report_criterion):
    rng = np.random.default_rng(4)
    gens = so3_generators(3)
    failures = 0
    for _ in range(50):
        n_left, n_right = rng.integers(1, 3, 2)
        f = MultiPoly.const(Fraction(int(rng.integers(1, 10)), int(rng.integers(1, 10))))
        for i in rng.integers(0, len(gens), n_left):
            f = f * gens[i]
        g = MultiPoly.const(int(rng.integers(-5, 6)))
        for i in rng.integers(0, len(gens), n_right):
            g = g + gens[i]
        failures += dualize(f * g) != dual_product(dualize(f), dualize(g))
    report_criterion(4, failures == 0, f"50 random products, {failures} non-identities")
    assert failures == 0


def test_criterion_5_jacobian_rank(report_criterion):
    rng = np.random.default_rng(5)
    ranks, smallest, fd_err = [], np.inf, 0.0
    for _ in range(20):
        x = triple_to_vector(random_twists(rng))
        jac = quadratic_jacobian(x)
        fd_err = max(fd_err, float(np.max(np.abs(jac - finite_difference_jacobian(quadratic_invariants, x, 1e-7)))))
        sv = normalized_singular_values(jac)
        assert sv.size == 12  # there is no 13th value for a 12 x 18 matrix
        smallest = min(smallest, sv[11])
        ranks.append(int(np.sum(sv > 1e-6)))
    ok = all(r == 12 for r in ranks) and fd_err < 1e-5
    report_criterion(5, ok, f"20 triples, ranks {sorted(set(ranks))}, min 12th s.v. {smallest:.2e}, fd diff {fd_err:.1e}")
    assert ok


def test_criterion_6_normal_form(report_criterion):
    rng = np.random.default_rng(6)
    counts = {}
    worst_pattern = 0.0
    for branch, trials in ((Branch.GENERIC, 500), (Branch.OMEGA1_ZERO, 50), (Branch.DEPENDENT_OMEGA12, 50)):
        passed = 0
        for _ in range(trials):
            twists = random_twists(rng) if branch is Branch.GENERIC else random_branch_triple(rng, branch)
            nf = normalize_triple(*twists)
            res = nf.pattern_residual()
            worst_pattern = max(worst_pattern, res)
            ok = nf.branch is branch and res < 1e-10 and signature_preserved(nf, twists, 1e-9)
            if branch is Branch.GENERIC:
                sig = signature(twists).labeled()
                table = normal_form_invariants(nf.alpha, nf.beta)
                ok = ok and len(table) == 14 and all(close(sig[k], table[k], 1e-9) for k in table)
            passed += ok
        counts[branch.name] = (passed, trials)
    ok = all(p == t for p, t in counts.values())
    detail = ", ".join(f"{name} {p}/{t}" for name, (p, t) in counts.items())
    report_criterion(6, ok, f"{detail}, worst pattern residual {worst_pattern:.1e}")
    assert ok


def test_criterion_7_rational_generation(report_criterion):
    reports = {
        "even": verify_even_generation(100, seed=70, rtol=1e-8),
        "odd": verify_odd_generation(100, seed=71, rtol=1e-8),
        "13 generators": verify_thirteen_generators(100, seed=72, rtol=1e-8),
    }
    ok = all(r.ok and r.passed == 100 for r in reports.values())
    detail = ", ".join(f"{name} {r.passed}/100 (worst {r.worst:.1e})" for name, r in reports.items())
    report_criterion(7, ok, detail)
    assert ok


def test_criterion_8_even_odd(report_criterion):
    rng = np.random.default_rng(8)
    parts = {lab: decompose_even_odd(generator_evaluator(lab)) for lab in LABELS}
    odd = {"I123", "I~123"}

    x0 = random_twists(rng)
    split_fail = 0
    for lab, (fe, fo) in parts.items():
        f = generator_evaluator(lab)(x0)
        e, o = (0.0, f) if lab in odd else (f, 0.0)
        split_fail += not (close(fe(x0), e, 1e-12) and close(fo(x0), o, 1e-12))

    parity_fail, worst = 0, 0.0
    for _ in range(200):
        g = random_motion(rng, parity=-1)
        x = random_twists(rng)
        gx = [adjoint_apply(g, s) for s in x]
        for fe, fo in parts.values():
            worst = max(worst, rel_err(fe(gx), fe(x)), rel_err(fo(gx), -fo(x)))
            parity_fail += not (close(fe(gx), fe(x), 1e-9) and close(fo(gx), -fo(x), 1e-9))

    ok = split_fail == 0 and parity_fail == 0
    report_criterion(8, ok, f"14 generators split correctly: {split_fail == 0}; 200 improper motions, worst rel {worst:.1e}")
    assert ok


def test_criterion_9_worked_triple(report_criterion, worked_triple, worked_triple_exact):
    oracle = brute_force(worked_triple)
    oracle_ok = all(abs(oracle[k] - v) < 1e-12 for k, v in WORKED.items())
    exact = signature(worked_triple_exact)
    floats = signature(worked_triple).labeled()
    ok = (
        oracle_ok
        and exact.labeled() == WORKED
        and all(floats[k] == v for k, v in WORKED.items())
        and syzygy_residuals(exact) == (0, 0)
        and syzygy_residuals(signature(worked_triple)) == (0.0, 0.0)
    )
    report_criterion(9, ok, "signature " + " ".join(f"{k}={v}" for k, v in exact.labeled().items()) + ", residuals (0, 0)")
    assert ok


def test_generators_cover_all_fourteen():
    assert len(LABELS) == 14
    assert {len(lab.lstrip("I~")) for lab in LABELS} == {2, 3}
    assert so3_generator_labels(3) == [lab for lab in LABELS if "~" not in lab]
