"""Clebsch-Gordan couplings: recurrence, closed forms, Q-Hahn link."""

from fractions import Fraction

import pytest

from ospq.cgc import (
    CGTable,
    EE,
    OE,
    OO,
    block_diagonalize_check,
    case_of,
    cgc_closed_form,
    closed_form_table,
    coupled_ells,
    hahn_admissible,
    highest_weight,
    ksum_as_qhahn,
    ksum_qhahn_check,
    multiplet,
    ratio_consistent,
    target_label,
)
from ospq.reps import MINUS, PLUS, RepLabel
from ospq.scalars import SURD_ZERO

HALF = Fraction(1, 2)


def test_case_names():
    odd = RepLabel(2, 0)
    even = RepLabel(1, 0, PLUS)
    assert case_of(odd, odd) == OO
    assert case_of(even, even) == EE
    assert case_of(odd, even) == OE


def test_coupled_ells_runs_down_to_difference():
    assert coupled_ells(RepLabel(2, 0), RepLabel(1, 0, PLUS)) == [
        Fraction(3, 2),
        HALF,
    ]
    assert coupled_ells(RepLabel(2, 0), RepLabel(2, 0)) == [2, 1, 0]


def test_target_label_tracks_parity_and_branch():
    odd = RepLabel(2, 1)
    even = RepLabel(1, 0, PLUS)
    tgt = target_label(odd, even, HALF)
    assert tgt == RepLabel(1, 0, PLUS)
    tgt2 = target_label(odd, even, Fraction(3, 2))
    assert tgt2 == RepLabel(3, 1, PLUS)


def test_target_label_rejects_uncancelled_eta():
    even = RepLabel(1, 0, PLUS)
    # same branch: the two eta/2 shifts add up instead of cancelling
    with pytest.raises(ValueError):
        target_label(even, even, 1)
    # opposite branches couple fine
    assert target_label(even, RepLabel(1, 0, MINUS), 1) == RepLabel(2, 0)


def test_highest_weight_row_is_annihilated():
    l1 = RepLabel(2, 0)
    l2 = RepLabel(2, 0)
    for ell in coupled_ells(l1, l2):
        coeffs = highest_weight(l1, l2, ell)
        assert coeffs
        assert all(m1 + m2 == ell for (m1, m2) in coeffs)


def test_multiplet_rows_cover_the_target():
    l1 = RepLabel(1, 0, PLUS)
    l2 = RepLabel(1, 1, MINUS)
    tab = multiplet(l1, l2, 1)
    ms = {m for (_, _, m) in tab.entries}
    assert ms == {-1, 0, 1}
    assert tab.coefficient(HALF, HALF, 1) != SURD_ZERO


def test_closed_form_matches_multiplet_up_to_one_ratio():
    samples = [
        (RepLabel(2, 0), RepLabel(2, 0)),
        (RepLabel(1, 1, PLUS), RepLabel(1, 1, MINUS)),
        (RepLabel(2, 1), RepLabel(1, 1, PLUS)),
    ]
    for l1, l2 in samples:
        for ell in coupled_ells(l1, l2):
            tab = multiplet(l1, l2, ell)
            closed = closed_form_table(l1, l2, ell, normalize=True)
            assert ratio_consistent(closed, tab.entries), (l1, l2, ell)


def test_unnormalized_closed_form_is_only_row_proportional():
    l1 = l2 = RepLabel(2, 0)
    tab = multiplet(l1, l2, 1)
    closed = closed_form_table(l1, l2, 1, normalize=False)
    # same support either way
    assert set(closed) == set(tab.entries)


def test_closed_form_zero_outside_range():
    l1 = l2 = RepLabel(2, 0)
    assert cgc_closed_form(l1, l2, 0, 1, 1) == SURD_ZERO


def test_ksum_qhahn_samples():
    cases = [
        (OO, 1, 1, 1, 0, 0),
        (OO, 2, 1, 2, 1, 1),
        (EE, HALF, HALF, 1, 0, HALF),
        (EE, Fraction(3, 2), HALF, 1, 1, HALF),
        (OE, 1, HALF, Fraction(3, 2), HALF, HALF),
        (OE, 2, Fraction(3, 2), Fraction(3, 2), HALF, HALF),
    ]
    for case, l1, l2, ell, m, m2 in cases:
        assert hahn_admissible(l1, l2, ell, m, m2)
        assert ksum_qhahn_check(case, l1, l2, ell, m, m2)


def test_hahn_parameters_stay_in_range():
    _, p = ksum_as_qhahn(OO, 2, 1, 2, 1, 1)
    assert 0 <= p.x <= p.N
    assert 0 <= p.M <= p.N


def test_hahn_admissible_filters_bad_tuples():
    assert not hahn_admissible(1, 1, 2, 0, 2)
    assert not hahn_admissible(HALF, HALF, 1, HALF, 0)


def test_cgtable_json_roundtrip():
    l1 = RepLabel(1, 0, PLUS)
    l2 = RepLabel(2, 1)
    tab = multiplet(l1, l2, Fraction(3, 2))
    back = CGTable.from_json(tab.to_json(), l1, l2)
    assert back.ell == tab.ell
    assert back.entries == tab.entries


def test_block_diagonalization_single_pair():
    rep = block_diagonalize_check(RepLabel(2, 0), RepLabel(1, 0, PLUS))
    assert rep["ok"]
    assert rep["dims"]
    assert rep["max_dev"] < 1e-9
