"""Normal-ordered group algebra and the universal T-matrix elements."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ospq.groupalg import (
    ExpFactor,
    NCElement,
    NCMonomial,
    anticommutator,
    fundamental_relations_check,
    jacobi_parameters,
    nc_mul,
    substitute_zeta,
    t_element_closed,
    t_element_duality,
    t_element_exponential,
    t_polynomial_check,
    zeta_element,
    zeta_power,
)
from ospq.qseries import ZetaPoly, little_qjacobi
from ospq.reps import MINUS, PLUS
from ospq.scalars import ExactScalar, ONE, Surd, omega_scalar

HALF = Fraction(1, 2)
Q1 = ExactScalar.q_power(1)


def monomials():
    return st.builds(
        lambda a, rq, s, b: NCElement.monomial(
            a, ExpFactor(Fraction(rq, 4), s), b
        ),
        st.integers(0, 3),
        st.integers(-4, 4),
        st.integers(-2, 2),
        st.integers(0, 3),
    )


@settings(max_examples=150, deadline=None)
@given(monomials(), monomials(), monomials())
def test_multiplication_is_associative(u, v, w):
    assert nc_mul(nc_mul(u, v), w) == nc_mul(u, nc_mul(v, w))


def test_exp_factor_commutation():
    x = NCElement.x_gen()
    e = NCElement.exp_factor(1, 1)
    # E(r,s) x = q^{2r} i^s x E(r,s)
    expect = nc_mul(x, e).scaled(ExactScalar.q_power(2) * omega_scalar(2))
    assert nc_mul(e, x) == expect


def test_odd_generators_anticommute():
    x, y = NCElement.x_gen(), NCElement.y_gen()
    assert not anticommutator(x, y)
    assert nc_mul(y, x) == -nc_mul(x, y)
    assert nc_mul(x, x)  # x^2 is a new monomial, not zero


def test_zeta_powers_frozen_coefficients():
    inv = ONE - Q1
    cases = {
        1: (NCMonomial(1, ExpFactor(-HALF), 1), -ONE / inv),
        2: (NCMonomial(2, ExpFactor(-1), 2), -ONE / (inv * inv)),
        3: (NCMonomial(3, ExpFactor(Fraction(-3, 2)), 3), ONE / (inv**3)),
    }
    for n, (mono, coeff) in cases.items():
        zp = zeta_power(n)
        assert list(zp.terms) == [mono]
        assert zp.terms[mono] == Surd(coeff, frozenset())


def test_zeta_power_matches_repeated_product():
    z = zeta_element()
    prod = NCElement.scalar(1)
    for n in range(5):
        assert zeta_power(n) == prod
        prod = nc_mul(prod, z)


def test_substitute_zeta_is_linear():
    p = ZetaPoly.from_list([2, 0, -1])
    direct = NCElement.scalar(2) - zeta_power(2)
    assert substitute_zeta(p) == direct


def test_t_element_routes_agree_on_samples():
    samples = [
        (HALF, HALF, -HALF, 0, PLUS),
        (HALF, -HALF, -HALF, 1, MINUS),
        (Fraction(3, 2), HALF, HALF, 0, MINUS),
        (Fraction(3, 2), Fraction(3, 2), -HALF, 1, PLUS),
    ]
    for ell, mp, m, lam, branch in samples:
        closed = t_element_closed(ell, mp, m, lam, branch)
        assert closed == t_element_duality(ell, mp, m, lam, branch)
        assert closed == t_element_exponential(ell, mp, m, lam, branch)


def test_t_element_rejects_bad_weights():
    with pytest.raises(ValueError):
        t_element_closed(HALF, Fraction(3, 2), HALF, 0, PLUS)
    with pytest.raises(ValueError):
        t_element_closed(1, 1, 0, 0, PLUS)  # integer ell is not even family


def test_t_polynomial_is_little_qjacobi():
    for ell, mp, m in [
        (HALF, HALF, HALF),
        (Fraction(3, 2), HALF, -HALF),
        (Fraction(3, 2), -Fraction(3, 2), HALF),
    ]:
        assert t_polynomial_check(ell, mp, m, 0, PLUS)
        assert t_polynomial_check(ell, mp, m, 1, MINUS)
        deg, alpha, beta = jacobi_parameters(ell, mp, m)
        assert little_qjacobi(deg, alpha, beta).coeff(0) == ONE


def test_fundamental_relation_block():
    rep = fundamental_relations_check()
    assert rep["ok"], rep["failures"]


def test_ncelement_json_roundtrip():
    el = t_element_closed(Fraction(3, 2), HALF, -HALF, 1, MINUS)
    assert NCElement.from_json(el.to_json()) == el
    assert NCElement.from_json(NCElement.zero().to_json()) == NCElement.zero()
