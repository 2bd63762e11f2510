import numpy as np
import pytest

from twistinv.invariants import close, signature
from twistinv.normal_form import (
    Branch,
    NormalFormError,
    PATTERN_TOL,
    classify,
    normal_form_invariants,
    normalize_triple,
    params_to_twists,
    random_branch_triple,
    signature_preserved,
)
from twistinv.screw import Twist, adjoint_apply, random_motion, random_twists


def random_params(rng, branch=Branch.GENERIC):
    alpha = rng.uniform(-1, 1, 6)
    beta = rng.uniform(-1, 1, 6)
    if branch is Branch.GENERIC:
        alpha[0], alpha[2] = rng.uniform(0.1, 1, 2)
    elif branch is Branch.DEPENDENT_OMEGA12:
        alpha[0], alpha[2], beta[2] = rng.uniform(0.1, 1), 0.0, rng.uniform(0.1, 1)
    else:
        alpha[0], alpha[2], beta[0] = 0.0, rng.uniform(0.1, 1), rng.uniform(0.1, 1)
    return alpha, beta


def test_worked_triple(worked_triple):
    nf = normalize_triple(*worked_triple)
    assert nf.branch is Branch.GENERIC
    np.testing.assert_allclose(nf.motion.rotation, np.eye(3), atol=1e-15)
    np.testing.assert_allclose(nf.motion.translation, np.zeros(3), atol=1e-15)
    np.testing.assert_allclose(nf.alpha, [1, 1, 1, 1, 1, 1])
    np.testing.assert_allclose(nf.beta, [1, 0, 1, 0, 0, 1])


def test_fixed_point(rng):
    alpha, beta = random_params(rng)
    twists = params_to_twists(alpha, beta)
    nf = normalize_triple(*twists)
    np.testing.assert_allclose(nf.motion.rotation, np.eye(3), atol=1e-14)
    np.testing.assert_allclose(nf.motion.translation, np.zeros(3), atol=1e-14)


def test_axes_aligned():
    twists = params_to_twists([1, 0, 1, 0, 0, 1], np.zeros(6))
    assert [list(s.omega) for s in twists] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert all(not np.any(s.v) for s in twists)


def test_generic_pattern_and_tables(rng):
    for _ in range(100):
        twists = random_twists(rng)
        nf = normalize_triple(*twists)
        assert nf.branch is Branch.GENERIC
        assert nf.pattern_residual() < 1e-10
        assert nf.alpha[0] > 0 and nf.alpha[2] > 0
        assert nf.motion.parity == 1 and nf.motion.check()
        assert signature_preserved(nf, twists)
        sig = signature(twists).labeled()
        for key, value in normal_form_invariants(nf.alpha, nf.beta).items():
            assert close(sig[key], value), key


def test_roundtrip_all_branches(rng):
    for branch in Branch:
        for _ in range(20):
            alpha, beta = random_params(rng, branch)
            nf = normalize_triple(*params_to_twists(alpha, beta, branch))
            assert nf.branch is branch
            np.testing.assert_allclose(nf.alpha, alpha, atol=1e-12)
            np.testing.assert_allclose(nf.beta, beta, atol=1e-12)


def test_generic_params_recovered_after_motion(rng):
    for _ in range(50):
        alpha, beta = random_params(rng)
        g = random_motion(rng)
        nf = normalize_triple(*[adjoint_apply(g, s) for s in params_to_twists(alpha, beta)])
        np.testing.assert_allclose(nf.alpha, alpha, atol=1e-12)
        np.testing.assert_allclose(nf.beta, beta, atol=1e-12)


def test_degenerate_orbits_keep_the_invariant_part(rng):
    # translations along the residual freedom may move some betas, never the alphas
    for branch in (Branch.OMEGA1_ZERO, Branch.DEPENDENT_OMEGA12):
        for _ in range(20):
            alpha, beta = random_params(rng, branch)
            twists = params_to_twists(alpha, beta, branch)
            g = random_motion(rng)
            nf = normalize_triple(*[adjoint_apply(g, s) for s in twists])
            assert nf.branch is branch
            np.testing.assert_allclose(nf.alpha, alpha, atol=1e-12)
            assert signature_preserved(nf, twists)


def test_random_branch_generators(rng):
    for branch in Branch:
        for _ in range(30):
            twists = random_branch_triple(rng, branch)
            assert classify(*twists[:2]) is branch
            nf = normalize_triple(*twists)
            assert nf.branch is branch
            assert nf.pattern_residual() < PATTERN_TOL
            assert signature_preserved(nf, twists)


@pytest.mark.parametrize(
    "twists, branch",
    [
        # w2 parallel to w1, and v2 - lam v1 along w1 as well
        ([Twist([1, 0, 0], [0, 1, 0]), Twist([2, 0, 0], [3, 2, 0]), Twist([0, 1, 1], [1, 1, 1])], Branch.DEPENDENT_OMEGA12),
        # second twist zero
        ([Twist([0, 0, 1], [1, 0, 0]), Twist([0, 0, 0], [0, 0, 0]), Twist([1, 2, 3], [0, 1, 0])], Branch.DEPENDENT_OMEGA12),
        # w1 = 0 and w2 parallel to v1
        ([Twist([0, 0, 0], [0, 2, 0]), Twist([0, 1, 0], [1, 0, 1]), Twist([1, 1, 0], [0, 0, 1])], Branch.OMEGA1_ZERO),
        # w1 = 0 and w2 = 0
        ([Twist([0, 0, 0], [1, 1, 0]), Twist([0, 0, 0], [0, 1, 1]), Twist([1, 0, 0], [0, 0, 1])], Branch.OMEGA1_ZERO),
        # w1 = 0 and the second twist zero
        ([Twist([0, 0, 0], [0, 0, 3]), Twist([0, 0, 0], [0, 0, 0]), Twist([1, 1, 1], [1, 0, 0])], Branch.OMEGA1_ZERO),
    ],
)
def test_degenerate_edge_cases(twists, branch):
    nf = normalize_triple(*twists)
    assert nf.branch is branch
    assert nf.pattern_residual() < 1e-12
    assert signature_preserved(nf, twists)
    assert nf.motion.check()


def test_omega1_zero_conventions(rng):
    for _ in range(20):
        nf = normalize_triple(*random_branch_triple(rng, Branch.OMEGA1_ZERO))
        assert nf.alpha[0] == pytest.approx(0, abs=1e-14)
        assert nf.beta[0] > 0 and nf.alpha[2] >= 0


def test_errors():
    zero = Twist([0, 0, 0], [0, 0, 0])
    s = Twist([1, 0, 0], [0, 0, 0])
    with pytest.raises(NormalFormError):
        normalize_triple(zero, zero, zero)
    with pytest.raises(NormalFormError):
        normalize_triple(zero, s, s)
    with pytest.raises(NormalFormError):
        params_to_twists([1, 0, 0, 0, 0, 1], np.zeros(6))
    with pytest.raises(NormalFormError):
        params_to_twists([-1, 0, 1, 0, 0, 1], np.zeros(6))
    with pytest.raises(ValueError):
        params_to_twists([1, 0, 1], np.zeros(6))


def test_orientation_is_kept_in_alpha6(rng):
    alpha, beta = random_params(rng)
    alpha[5] = -abs(alpha[5])
    nf = normalize_triple(*params_to_twists(alpha, beta))
    assert nf.alpha[5] < 0
    assert signature(nf.transformed).I(1, 2, 3) < 0
