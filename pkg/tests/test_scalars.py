"""Exact scalar field, bracket symbols, and radical bookkeeping."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ospq.scalars import (
    ExactScalar,
    IncompatibleRadicals,
    ONE,
    Surd,
    ZERO,
    angle_bracket,
    angle_factorial,
    eval_numeric,
    format_scalar,
    kbracket,
    kfactorial,
    minus_one_pow,
    omega_scalar,
    parse_scalar,
    sq_bracket,
    sq_factorial,
    sqi_bracket,
    sqi_factorial,
    sqrt_bracket_ratio,
    sqrt_factorial_ratio,
)

Q = ExactScalar.q_power


def scalars():
    """Random nonzero-ish field elements: short Laurent polys over Q(w)."""
    term = st.tuples(
        st.integers(-3, 3),
        st.integers(1, 4),
        st.integers(-6, 6),
        st.integers(0, 3),
    )
    return st.lists(term, min_size=0, max_size=3).map(
        lambda ts: sum(
            (
                ExactScalar.coerce(Fraction(a, b))
                * ExactScalar.s_power(e)
                * omega_scalar(k)
                for a, b, e, k in ts
            ),
            ZERO,
        )
    )


@settings(max_examples=300, deadline=None)
@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    assert a - a == ZERO


@settings(max_examples=200, deadline=None)
@given(scalars(), scalars())
def test_division_inverts_multiplication(a, b):
    if b:
        assert (a * b) / b == a
        assert b / b == ONE


@settings(max_examples=200, deadline=None)
@given(scalars())
def test_format_parse_roundtrip(a):
    assert parse_scalar(format_scalar(a)) == a


@settings(max_examples=150, deadline=None)
@given(scalars(), scalars())
def test_numeric_evaluation_is_a_homomorphism(a, b):
    q = 0.37
    fa, fb = eval_numeric(a, q), eval_numeric(b, q)
    assert eval_numeric(a + b, q) == pytest.approx(fa + fb, rel=1e-9, abs=1e-9)
    assert eval_numeric(a * b, q) == pytest.approx(fa * fb, rel=1e-9, abs=1e-9)


def test_omega_is_a_primitive_eighth_root():
    w = omega_scalar(1)
    assert w * w * w * w == ExactScalar.coerce(-1)
    assert omega_scalar(8) == ONE
    assert omega_scalar(2) * omega_scalar(2) == ExactScalar.coerce(-1)  # i^2


def test_bracket_small_values():
    # [n] = (q^{-n/2} - (-1)^n q^{n/2}) / (q^{-1/2} + q^{1/2})
    assert kbracket(0) == ZERO
    assert kbracket(1) == ONE
    assert kbracket(2) == Q(Fraction(-1, 2)) - Q(Fraction(1, 2))
    assert kbracket(3) == Q(-1) + Q(1) - ONE
    assert kfactorial(3) == kbracket(1) * kbracket(2) * kbracket(3)


@pytest.mark.parametrize("n", range(8))
def test_super_bracket_matches_box_bracket(n):
    # [n] = q^{(1-n)/2} * (1 - (-1)^n q^n) / (1 + q)
    assert kbracket(n) == Q(Fraction(1 - n, 2)) * sq_bracket(n)


@pytest.mark.parametrize("n", range(1, 8))
def test_inverse_brackets_are_q_inverse_images(n):
    # q -> 1/q images in closed form:
    # box_{1/q}(n) = (-1)^{n+1} q^{1-n} box(n), angle(n) = (-1)^{n-1} [n]
    sign = minus_one_pow(n + 1)
    assert sqi_bracket(n) == sign * Q(1 - n) * sq_bracket(n)
    assert angle_bracket(n) == sign * kbracket(n)


@pytest.mark.parametrize("c", range(7))
def test_factorial_sign_identities(c):
    sign = minus_one_pow(Fraction(c * (c - 1), 2))
    assert angle_factorial(c) == sign * kfactorial(c)
    assert sqi_factorial(c) == sign * Q(Fraction(-c * (c - 1), 4)) * kfactorial(c)
    assert sq_factorial(c) == Q(Fraction(c * (c - 1), 4)) * kfactorial(c)


def test_surd_products_merge_shared_radicands():
    r2 = Surd(ONE, frozenset({2}))
    assert r2 * r2 == Surd(kbracket(2), frozenset())
    r23 = Surd(ONE, frozenset({2, 3}))
    assert r23 * r2 == Surd(kbracket(2), frozenset({3}))


def test_surd_addition_requires_equal_radicands():
    r2 = Surd(ONE, frozenset({2}))
    r3 = Surd(ONE, frozenset({3}))
    assert r2 + r2 == Surd(ONE + ONE, frozenset({2}))
    with pytest.raises(IncompatibleRadicals):
        r2 + r3


def test_sqrt_ratios_cancel_common_factors():
    v = sqrt_bracket_ratio([2, 3], [3])
    assert v == Surd(ONE, frozenset({2}))
    w = sqrt_factorial_ratio([3], [2])
    # [3]!/[2]! = [3]
    assert w * w == Surd(kbracket(3), frozenset())


def test_surd_numeric_evaluation():
    v = Surd(Q(Fraction(1, 2)), frozenset({2}))
    q = 0.55
    expect = q**0.5 * abs(eval_numeric(kbracket(2), q)) ** 0.5
    assert abs(eval_numeric(v, q)) == pytest.approx(abs(expect), rel=1e-12)
