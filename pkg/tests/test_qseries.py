"""Terminating series, Q-Hahn and little Q-Jacobi families at Q = -q."""

from fractions import Fraction

import pytest

from ospq.qseries import (
    Q_SCALAR,
    Qpow,
    SeriesPole,
    ZetaPoly,
    bhs_terminating,
    factorial_ratio,
    factorial_to_shifted,
    little_qjacobi,
    qhahn,
    shifted_factorial,
)
from ospq.scalars import ExactScalar, ONE, ZERO, eval_numeric, kfactorial


def test_Q_is_minus_q():
    assert Q_SCALAR == -ExactScalar.q_power(1)
    assert Qpow(2) == ExactScalar.q_power(2)
    assert Qpow(-1) == -ExactScalar.q_power(-1)
    with pytest.raises(ValueError):
        Qpow(Fraction(1, 2))


def test_shifted_factorial_small_cases():
    x = Qpow(1)
    assert shifted_factorial(x, Q_SCALAR, 0) == ONE
    assert shifted_factorial(x, Q_SCALAR, 1) == ONE - x
    assert shifted_factorial(x, Q_SCALAR, 2) == (ONE - x) * (ONE - x * Q_SCALAR)


def test_terminating_series_breaks_off():
    # 1phi0(Q^{-2}; -; Q, z) has exactly three terms
    z = Qpow(1)
    val = bhs_terminating([Qpow(-2)], [], Q_SCALAR, z, 2)
    k1 = (ONE - Qpow(-2)) / (ONE - Q_SCALAR) * z
    k2 = (
        (ONE - Qpow(-2))
        * (ONE - Qpow(-1))
        / ((ONE - Q_SCALAR) * (ONE - Qpow(2)))
        * z
        * z
    )
    assert val == ONE + k1 + k2


def test_series_pole_detection():
    with pytest.raises(SeriesPole):
        # denominator parameter Q^{-1} hits 1 - Q*Q^{-1}... at k = 2
        bhs_terminating([Qpow(-3)], [Qpow(-1)], Q_SCALAR, Q_SCALAR, 3)


def test_qhahn_degree_zero_is_one():
    assert qhahn(0, 1, 0, 0, 2) == ONE


def test_qhahn_vanishing_beyond_range():
    with pytest.raises(ValueError):
        qhahn(3, 0, 0, 0, 2)


def test_qhahn_symmetric_numeric_value():
    # hand-expanded 3phi2 for M=1: 1 - (1-Q^{-1})(1-Q^{a+b+2})(1-Q^{-x})
    #                                  / ((1-Q^{a+1})(1-Q^{-N})) * Q/(1-Q)
    a = b = 0
    x, N = 1, 2
    lhs = qhahn(1, x, a, b, N)
    frac = (
        (ONE - Qpow(-1)) * (ONE - Qpow(a + b + 2)) * (ONE - Qpow(-x))
        / ((ONE - Qpow(a + 1)) * (ONE - Qpow(-N)) * (ONE - Q_SCALAR))
    )
    assert lhs == ONE + frac * Q_SCALAR


def test_zeta_poly_trims_and_evaluates():
    p = ZetaPoly.from_list([1, 2, ZERO])
    assert p.degree == 1
    assert p.coeff(5) == ZERO
    two = ExactScalar.coerce(2)
    assert p.eval_scalar(two) == ExactScalar.coerce(5)


def test_zeta_poly_reflection_is_an_involution():
    p = ZetaPoly.from_list([1, 2, 3, 4])
    r = p.reflected()
    assert r.coeffs[1] == -p.coeffs[1]
    assert r.coeffs[2] == p.coeffs[2]
    assert r.reflected() == p


def test_little_qjacobi_constant_term_is_one():
    for m in range(4):
        assert little_qjacobi(m, 1, 0).coeff(0) == ONE


def test_little_qjacobi_degree_one():
    # p_1 = 1 + Q (1-Q^{-1})(1-Q^{a+b+2})/((1-Q^{a+1})(1-Q)) * zeta
    a, b = 1, 1
    p = little_qjacobi(1, a, b)
    expect = (
        (ONE - Qpow(-1))
        * (ONE - Qpow(a + b + 2))
        / ((ONE - Qpow(a + 1)) * (ONE - Q_SCALAR))
    )
    assert p.coeff(1) == expect * Q_SCALAR


def test_factorial_to_shifted_matches_direct_ratio():
    for A in range(0, 5):
        for k in range(0, 3):
            up = factorial_to_shifted(A, k, "up")
            assert up.value() == factorial_ratio(A, A + k)
            if A - k >= 0:
                down = factorial_to_shifted(A, k, "down")
                assert down.value() == factorial_ratio(A, A - k)


def test_factorial_ratio_basic():
    assert factorial_ratio(3, 3) == ONE
    assert factorial_ratio(4, 2) == kfactorial(4) / kfactorial(2)


def test_qjacobi_numeric_sanity():
    # exact coefficients evaluate to finite numbers inside (0,1)
    p = little_qjacobi(3, 2, 1)
    val = sum(
        eval_numeric(c, 0.4) * (0.2) ** n for n, c in enumerate(p.coeffs)
    )
    assert abs(val) < 1e6
