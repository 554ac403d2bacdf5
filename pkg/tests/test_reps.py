"""Irreducible representations: weights, ladder action, grade-star."""

from fractions import Fraction

import pytest

from ospq.reps import (
    EVEN,
    MINUS,
    ODD,
    PLUS,
    RepLabel,
    SurdMatrix,
    Weight,
    act,
    act_power,
    all_labels,
    check_defining_relations,
    grade_star_check,
    rep_matrix,
    weight_of,
)
from ospq.scalars import ExactScalar, ONE, SURD_ZERO, Surd, omega_scalar

HALF = Fraction(1, 2)


def test_label_families_and_dimensions():
    assert RepLabel(2, 0).family == ODD
    assert RepLabel(2, 0).dim == 3
    assert RepLabel(1, 0, PLUS).family == EVEN
    assert RepLabel(1, 0, PLUS).dim == 2
    with pytest.raises(ValueError):
        RepLabel(1, 0)  # even family needs a branch
    with pytest.raises(ValueError):
        RepLabel(2, 0, PLUS)  # odd family carries none


def test_m_values_descend_from_highest_weight():
    lab = RepLabel(3, 1, MINUS)
    assert lab.m_values() == [Fraction(3, 2), HALF, -HALF, -Fraction(3, 2)]
    assert lab.parities() == [1, 0, 1, 0]


def test_weights_carry_eta_units_only_in_even_family():
    odd = RepLabel(2, 0)
    assert weight_of(odd, 1) == Weight(HALF, 0)
    ev = RepLabel(1, 0, PLUS)
    assert weight_of(ev, HALF) == Weight(Fraction(1, 4), 1)
    assert weight_of(RepLabel(1, 0, MINUS), HALF) == Weight(Fraction(1, 4), -1)


def test_weight_qpow_is_exact():
    w = Weight(Fraction(1, 4), 1)
    assert w.qpow(2) == ExactScalar.s_power(2) * omega_scalar(2)
    assert w.qpow(1) == ExactScalar.s_power(1) * omega_scalar(1)
    with pytest.raises(ValueError):
        w.qpow(Fraction(1, 2))  # would need a square root of s


def test_fundamental_raising_coefficient():
    lab = RepLabel(1, 0, PLUS)
    c, mp = act("V+", lab, -HALF)
    assert mp == HALF
    # sqrt([1][2]) / [2] = q^{1/2} sqrt([2]) / (1 - q) in the field
    expect = Surd(
        ExactScalar.q_power(HALF) / (ONE - ExactScalar.q_power(1)), frozenset({2})
    )
    assert c == expect
    # ladder annihilates the highest weight vector
    top, _ = act("V+", lab, HALF)
    assert top == SURD_ZERO


def test_act_power_matches_repeated_action():
    lab = RepLabel(3, 0, MINUS)
    for gen in ("V+", "V-"):
        for m in lab.m_values():
            c1, m1 = act(gen, lab, m)
            if not c1:
                continue
            c2, m2 = act(gen, lab, m1)
            cp, mp = act_power(gen, 2, lab, m)
            assert mp == m2
            assert cp == c2 * c1


def test_rep_matrix_products_respect_words():
    lab = RepLabel(2, 1)
    vp = rep_matrix("V+", lab)
    vm = rep_matrix("V-", lab)
    assert rep_matrix(("V+", "V-"), lab) == vp @ vm


def test_defining_relations_sample_labels():
    for lab in (RepLabel(0, 0), RepLabel(2, 1), RepLabel(1, 0, PLUS),
                RepLabel(3, 1, MINUS)):
        assert check_defining_relations(lab).ok


def test_grade_star_sample_labels():
    for lab in (RepLabel(2, 0), RepLabel(1, 1, PLUS), RepLabel(3, 0, MINUS)):
        assert grade_star_check(lab).ok


def test_all_labels_enumeration():
    labels = all_labels(2)
    # two_ell = 0, 2: 2 lam each; two_ell = 1: 2 lam x 2 branches
    assert len(labels) == 8
    assert len({(l.two_ell, l.lam, l.branch) for l in labels}) == 8


def test_surd_matrix_arithmetic():
    a = SurdMatrix([[1, 0], [0, 2]])
    b = SurdMatrix([[0, 1], [1, 0]])
    assert (a @ b).rows[0][1] == Surd.coerce(1)
    assert (a + b - b) == a
    assert (-a).rows[1][1] == Surd.coerce(-2)
    assert SurdMatrix.zero(2).is_zero()


def test_even_family_branches_differ_by_phases_not_magnitudes():
    q = 0.55
    plus = rep_matrix("V+", RepLabel(1, 0, PLUS)).eval_at(q)
    minus = rep_matrix("V+", RepLabel(1, 0, MINUS)).eval_at(q)
    assert abs(plus[0][1]) == pytest.approx(abs(minus[0][1]), rel=1e-12)
    assert plus[0][1] == pytest.approx(-minus[0][1], rel=1e-12)
