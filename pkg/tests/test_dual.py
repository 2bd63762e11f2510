from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from twistinv.dual import (
    DualMatrix3,
    DualScalar,
    DualVector3,
    dual_cross,
    dual_det3,
    dual_dot,
    dual_mul,
    is_dual_orthogonal,
)
from twistinv.screw import hat, phi_inverse, random_motion

E1, E2, E3 = np.eye(3)

fractions = st.fractions(min_value=-10, max_value=10, max_denominator=12)
dual_scalars = st.builds(DualScalar, fractions, fractions)


def as_matrix(x: DualScalar) -> np.ndarray:
    # a + eps b  <->  [[a, 0], [b, a]]; an independent model of D
    return np.array([[x.primal, 0], [x.dual, x.primal]], dtype=object)


def test_dual_mul_identity():
    c, d = Fraction(3, 7), Fraction(-2, 5)
    assert dual_mul(DualScalar(1, 0), DualScalar(c, d)) == DualScalar(c, d)


def test_eps_squared_is_zero():
    assert dual_mul(DualScalar(0, 1), DualScalar(0, 1)) == DualScalar(0, 0)


def test_dual_mul_against_matrix_model():
    x, y = DualScalar(2, 3), DualScalar(4, 5)
    m = as_matrix(x) @ as_matrix(y)
    expected = DualScalar(m[0, 0], m[1, 0])
    assert expected == DualScalar(8, 22)
    assert dual_mul(x, y) == expected


@given(dual_scalars, dual_scalars, dual_scalars)
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(dual_scalars)
def test_inverse(x):
    if x.primal == 0:
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == DualScalar(1, 0)
        assert x.inverse() == DualScalar(1 / x.primal, -x.dual / x.primal ** 2)


def test_dual_dot_examples():
    assert dual_dot(DualVector3(E1), DualVector3(E1)) == DualScalar(1, 0)
    w, v = np.array([1.0, 2.0, -1.0]), np.array([0.5, 3.0, 2.0])
    u = DualVector3(w, v)
    assert dual_dot(u, u) == DualScalar(w @ w, 2 * (w @ v))
    assert dual_dot(DualVector3(E1, E2), DualVector3(E2, E1)) == DualScalar(0, 2)


def test_dual_cross_examples():
    r = dual_cross(DualVector3(E1), DualVector3(E2))
    assert r == DualVector3(E3, np.zeros(3))
    u = DualVector3([1, 2, 3], [4, 5, 6])
    assert dual_cross(u, u) == DualVector3(np.zeros(3), np.zeros(3))
    r = dual_cross(DualVector3(E1, E2), DualVector3(E2, E3))
    assert r == DualVector3(E3, -E2)


def test_dual_det3_examples():
    assert dual_det3(DualMatrix3(np.eye(3))) == DualScalar(1, 0)
    assert dual_det3(DualMatrix3(np.eye(3), np.eye(3))) == DualScalar(1, 3)
    c = DualVector3([1, 2, 3], [0, 1, -1])
    m = DualMatrix3.from_columns(c, DualVector3([2, 0, 1], [1, 1, 1]), c)
    assert dual_det3(m) == DualScalar(0, 0)


def _random_exact_dual_matrix(rng):
    p = [[Fraction(int(x), 3) for x in row] for row in rng.integers(-5, 6, (3, 3))]
    d = [[Fraction(int(x), 3) for x in row] for row in rng.integers(-5, 6, (3, 3))]
    return DualMatrix3(p, d)


def test_det_multiplicative_exact(rng):
    for _ in range(20):
        m, n = _random_exact_dual_matrix(rng), _random_exact_dual_matrix(rng)
        assert dual_det3(m @ n) == dual_det3(m) * dual_det3(n)


def test_cross_primal_orthogonality(rng):
    for _ in range(20):
        u = DualVector3(*[[Fraction(int(x), 5) for x in row] for row in rng.integers(-9, 10, (2, 3))])
        w = DualVector3(*[[Fraction(int(x), 5) for x in row] for row in rng.integers(-9, 10, (2, 3))])
        assert dual_dot(u, dual_cross(u, w)).primal == 0


def test_module_axioms(rng):
    u = DualVector3([Fraction(1, 2), 3, -1], [2, Fraction(-1, 3), 0])
    w = DualVector3([0, 1, Fraction(5, 4)], [Fraction(1)] * 3)
    a, b = DualScalar(Fraction(2, 3), 5), DualScalar(-1, Fraction(1, 7))
    assert (u + w).scale(a) == u.scale(a) + w.scale(a)
    assert u.scale(a + b) == u.scale(a) + u.scale(b)
    assert u.scale(a * b) == u.scale(b).scale(a)


def test_orthogonality_examples():
    assert is_dual_orthogonal(DualMatrix3(np.eye(3))).ok
    s = hat([Fraction(1), Fraction(-2), Fraction(3)])
    assert is_dual_orthogonal(DualMatrix3(np.eye(3, dtype=int) + 0 * s, s), tol=0).ok
    report = is_dual_orthogonal(DualMatrix3(np.eye(3), np.eye(3)))
    assert not report.ok
    assert report.skewness == 2.0
    assert report.orthogonality == 0.0 and report.determinant == 0.0


def test_dual_orthogonal_has_unit_det(rng):
    for _ in range(10):
        m = phi_inverse(random_motion(rng))
        assert is_dual_orthogonal(m)
        d = dual_det3(m)
        assert d.primal == pytest.approx(1, abs=1e-12)
        assert d.dual == pytest.approx(0, abs=1e-12)


def test_immutability():
    u = DualVector3([1, 2, 3])
    with pytest.raises(AttributeError):
        u.primal = np.zeros(3)
    with pytest.raises(ValueError):
        u.primal[0] = 7.0
